// Copyright 2026 The f2c Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "f2c/pauli.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace f2c {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Pauli strings differ in length: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

// Power of i picked up by the single-qubit product a*b, letters indexed
// I=0, X=1, Y=2, Z=3.
constexpr int kLetterPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},  // XY = iZ, XZ = -iY
    {0, 3, 0, 1},  // YX = -iZ, YZ = iX
    {0, 1, 3, 0},  // ZX = iY, ZY = -iX
};

int letter_index(bool x, bool z) {
  if (x && z) return 2;
  if (x) return 1;
  if (z) return 3;
  return 0;
}

}  // namespace

PauliString::PauliString(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::parse(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) p.set(q, letters[q]);
  return p;
}

bool PauliString::x(std::size_t q) const { return (x_[q / kWordBits] >> (q % kWordBits)) & 1u; }
bool PauliString::z(std::size_t q) const { return (z_[q / kWordBits] >> (q % kWordBits)) & 1u; }

char PauliString::letter(std::size_t q) const {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[letter_index(x(q), z(q))];
}

void PauliString::set(std::size_t q, char letter) {
  if (q >= n_) throw std::out_of_range("qubit index out of range");
  bool xb = false;
  bool zb = false;
  switch (letter) {
    case 'I': break;
    case 'X': xb = true; break;
    case 'Y': xb = zb = true; break;
    case 'Z': zb = true; break;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") + letter + "'");
  }
  const std::uint64_t bit = std::uint64_t{1} << (q % kWordBits);
  auto& xw = x_[q / kWordBits];
  auto& zw = z_[q / kWordBits];
  xw = xb ? (xw | bit) : (xw & ~bit);
  zw = zb ? (zw | bit) : (zw & ~bit);
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const {
  std::size_t h = std::hash<std::size_t>{}(p.size());
  for (std::size_t i = 0; i < p.x_words().size(); ++i) {
    h ^= std::hash<std::uint64_t>{}(p.x_words()[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(p.z_words()[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::complex<double> PauliProduct::phase() const {
  switch (phase_power & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  PauliProduct out{0, PauliString(a.size())};
  int power = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const int la = letter_index(a.x(q), a.z(q));
    const int lb = letter_index(b.x(q), b.z(q));
    power += kLetterPhase[la][lb];
    const bool x = a.x(q) != b.x(q);
    const bool z = a.z(q) != b.z(q);
    out.product.set(q, "IXYZ"[letter_index(x, z)]);
  }
  out.phase_power = power & 3;
  return out;
}

bool anticommutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::size_t parity = 0;
  for (std::size_t i = 0; i < a.x_words().size(); ++i) {
    parity += std::popcount((a.x_words()[i] & b.z_words()[i]) ^ (a.z_words()[i] & b.x_words()[i]));
  }
  return parity & 1u;
}

double commutator_norm(const PauliTerm& a, const PauliTerm& b) {
  return anticommutes(a.string, b.string) ? 2.0 * std::abs(a.coeff * b.coeff) : 0.0;
}

std::optional<MajoranaBilinear> classify(const PauliString& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> support;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x(q) || p.z(q)) support.push_back(q);
  }
  if (support.size() == 1 && p.letter(support[0]) == 'Z') {
    // Z_q = -i gamma_{2q} gamma_{2q+1}
    const std::size_t q = support[0];
    return MajoranaBilinear{2 * q, 2 * q + 1, 1};
  }
  if (support.size() < 2) return std::nullopt;

  // Endpoints must be X/Y with a Z on every qubit strictly between.
  std::size_t lo = support.front();
  std::size_t hi = support.back();
  const char left = p.letter(lo);
  const char right = p.letter(hi);
  if (left == 'Z' || right == 'Z') return std::nullopt;
  if (support.size() != hi - lo + 1) return std::nullopt;
  for (std::size_t q = lo + 1; q < hi; ++q) {
    if (p.letter(q) != 'Z') return std::nullopt;
  }

  // gamma_a gamma_b = (P_lo Z_lo) Z...Z Q_hi with P_lo Z_lo = -iY for P=X and
  // +iX for P=Y, so an X endpoint on the left comes from a Y-type mode.
  MajoranaBilinear out;
  int factor_power;  // gamma_a gamma_b = i^factor_power * P
  if (left == 'X') {
    out.a = 2 * lo + 1;
    factor_power = 1;
  } else {
    out.a = 2 * lo;
    factor_power = 3;
  }
  out.b = right == 'X' ? 2 * hi : 2 * hi + 1;
  // P = i^{-factor_power} gamma_a gamma_b = sign * (-i) gamma_a gamma_b
  out.sign = factor_power == 1 ? 1 : -1;
  return out;
}

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms) : n_(n_qubits) {
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
  std::vector<PauliTerm> merged;
  for (auto& t : terms) {
    if (t.string.size() != n_) {
      throw std::invalid_argument("term '" + t.string.str() + "' has " +
                                  std::to_string(t.string.size()) + " qubits, expected " +
                                  std::to_string(n_));
    }
    if (!std::isfinite(t.coeff)) {
      throw std::invalid_argument("non-finite coefficient on term '" + t.string.str() + "'");
    }
    auto [it, inserted] = index.try_emplace(t.string, merged.size());
    if (inserted) {
      merged.push_back(std::move(t));
    } else {
      merged[it->second].coeff += t.coeff;
    }
  }
  for (auto& t : merged) {
    if (std::abs(t.coeff) > kZeroDropThreshold) terms_.push_back(std::move(t));
  }
}

Hamiltonian parse_hamiltonian(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed Hamiltonian JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("terms")) {
    throw std::invalid_argument("Hamiltonian JSON needs \"n_qubits\" and \"terms\"");
  }
  const auto& nq = j.at("n_qubits");
  if (!nq.is_number_integer() || nq.get<long long>() < 1) {
    throw std::invalid_argument("\"n_qubits\" must be a positive integer");
  }
  const auto n = nq.get<std::size_t>();
  std::vector<PauliTerm> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.contains("pauli") || !t.contains("coeff") || !t.at("pauli").is_string() ||
        !t.at("coeff").is_number()) {
      throw std::invalid_argument("each term needs a string \"pauli\" and numeric \"coeff\"");
    }
    terms.push_back({PauliString::parse(t.at("pauli").get<std::string>()),
                     t.at("coeff").get<double>()});
  }
  return Hamiltonian(n, std::move(terms));
}

std::string render_hamiltonian(const Hamiltonian& h) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : h.terms()) {
    nlohmann::ordered_json term;
    term["pauli"] = t.string.str();
    term["coeff"] = t.coeff;
    terms.push_back(std::move(term));
  }
  nlohmann::ordered_json j;
  j["n_qubits"] = h.n_qubits();
  j["terms"] = terms;
  return j.dump(2) + "\n";
}

Hamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_hamiltonian(buf.str());
}

void save_hamiltonian(const Hamiltonian& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << render_hamiltonian(h);
}

}  // namespace f2c

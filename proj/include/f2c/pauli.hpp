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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace f2c {

/**
 * A Pauli string over n qubits in symplectic form.
 *
 * Qubit q carries the letter given by (x_q, z_q): I=(0,0), X=(1,0), Z=(0,1),
 * Y=(1,1). Text renderings put qubit 0 leftmost.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n);

  /** Parses a string over {I,X,Y,Z}; throws std::invalid_argument otherwise. */
  static PauliString parse(std::string_view letters);

  std::size_t size() const { return n_; }
  bool x(std::size_t q) const;
  bool z(std::size_t q) const;
  char letter(std::size_t q) const;
  void set(std::size_t q, char letter);

  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  std::string str() const;

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const;
};

/** Product a*b = i^phase_power * product. */
struct PauliProduct {
  int phase_power = 0;  // 0:+1, 1:+i, 2:-1, 3:-i
  PauliString product;

  std::complex<double> phase() const;
};

PauliProduct multiply(const PauliString& a, const PauliString& b);
bool anticommutes(const PauliString& a, const PauliString& b);

struct PauliTerm {
  PauliString string;
  double coeff = 0.0;
};

/** Spectral norm of [a, b]: 2|w_a w_b| when the strings anticommute, else 0. */
double commutator_norm(const PauliTerm& a, const PauliTerm& b);

/**
 * A Majorana bilinear sign * (-i) * gamma_a * gamma_b with a < b.
 *
 * Mode 2q is Z_0...Z_{q-1} X_q and mode 2q+1 is Z_0...Z_{q-1} Y_q.
 */
struct MajoranaBilinear {
  std::size_t a = 0;
  std::size_t b = 0;
  int sign = 1;

  friend bool operator==(const MajoranaBilinear&, const MajoranaBilinear&) = default;
};

/**
 * Returns the Majorana bilinear equal to the string's matrix, or nullopt when
 * the string is not quadratic in Majorana operators.
 */
std::optional<MajoranaBilinear> classify(const PauliString& p);

inline bool is_free_fermionic(const PauliTerm& t) { return classify(t.string).has_value(); }

/**
 * Weighted sum of Pauli strings on a fixed number of qubits.
 *
 * Construction merges duplicate strings (first occurrence fixes the order)
 * and drops terms whose merged coefficient is at most 1e-15 in magnitude.
 */
class Hamiltonian {
 public:
  static constexpr double kZeroDropThreshold = 1e-15;

  Hamiltonian() = default;
  Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms);

  std::size_t n_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/** Reads the {"n_qubits": n, "terms": [{"pauli": ..., "coeff": ...}]} format. */
Hamiltonian parse_hamiltonian(std::string_view json_text);
std::string render_hamiltonian(const Hamiltonian& h);

Hamiltonian load_hamiltonian(const std::string& path);
void save_hamiltonian(const Hamiltonian& h, const std::string& path);

}  // namespace f2c

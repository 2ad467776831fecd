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

#include "f2c/models.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace f2c {

namespace {

using cd = std::complex<double>;

constexpr double kAlgebraNoise = 1e-12;

// Complex-weighted Pauli sum used to expand fermionic operators. Keeps first
// insertion order so generated Hamiltonians have a stable term order.
class PauliSum {
 public:
  explicit PauliSum(std::size_t n) : n_(n) {}

  static PauliSum single(std::size_t n, const PauliString& p, cd c) {
    PauliSum s(n);
    s.add(p, c);
    return s;
  }

  void add(const PauliString& p, cd c) {
    auto [it, inserted] = index_.try_emplace(p, terms_.size());
    if (inserted) {
      terms_.emplace_back(p, c);
    } else {
      terms_[it->second].second += c;
    }
  }

  PauliSum& operator+=(const PauliSum& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }

  PauliSum operator*(const PauliSum& o) const {
    PauliSum out(n_);
    for (const auto& [p, c] : terms_) {
      for (const auto& [q, d] : o.terms_) {
        const auto prod = multiply(p, q);
        out.add(prod.product, c * d * prod.phase());
      }
    }
    return out;
  }

  PauliSum scaled(cd s) const {
    PauliSum out = *this;
    for (auto& term : out.terms_) term.second *= s;
    return out;
  }

  PauliSum adjoint() const {
    PauliSum out = *this;
    for (auto& term : out.terms_) term.second = std::conj(term.second);
    return out;
  }

  // Appends the real parts as Hamiltonian terms; the sum must be Hermitian.
  void emit(std::vector<PauliTerm>& out) const {
    for (const auto& [p, c] : terms_) {
      if (std::abs(c.imag()) > kAlgebraNoise) {
        throw std::logic_error("generated operator is not Hermitian at '" + p.str() + "'");
      }
      if (p.is_identity() || std::abs(c.real()) <= kAlgebraNoise) continue;
      out.push_back({p, c.real()});
    }
  }

 private:
  std::size_t n_;
  std::vector<std::pair<PauliString, cd>> terms_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
};

PauliSum annihilator(std::size_t p, std::size_t n) {
  PauliString x(n);
  PauliString y(n);
  for (std::size_t q = 0; q < p; ++q) {
    x.set(q, 'Z');
    y.set(q, 'Z');
  }
  x.set(p, 'X');
  y.set(p, 'Y');
  PauliSum s(n);
  s.add(x, 0.5);
  s.add(y, cd(0.0, 0.5));
  return s;
}

PauliSum identity_sum(std::size_t n) { return PauliSum::single(n, PauliString(n), 1.0); }

// c+_p c_q + c+_q c_p
PauliSum hopping(std::size_t p, std::size_t q, std::size_t n) {
  const PauliSum cp = annihilator(p, n);
  const PauliSum cq = annihilator(q, n);
  PauliSum s = cp.adjoint() * cq;
  s += cq.adjoint() * cp;
  return s;
}

PauliSum number(std::size_t p, std::size_t n) {
  const PauliSum c = annihilator(p, n);
  return c.adjoint() * c;
}

void require_sites(std::size_t sites, const char* what) {
  if (sites < 2) throw std::invalid_argument(std::string(what) + " needs at least 2 sites");
}

void add_bond(std::vector<PauliTerm>& terms, std::size_t n, std::size_t a, std::size_t b,
              double jx, double jy, double jz) {
  for (const auto& [letter, j] : {std::pair{'X', jx}, std::pair{'Y', jy}, std::pair{'Z', jz}}) {
    PauliString p(n);
    p.set(a, letter);
    p.set(b, letter);
    terms.push_back({p, j});
  }
}

}  // namespace

Hamiltonian fermi_hubbard_1d(std::size_t sites, double t_hop, double u_int) {
  require_sites(sites, "fermi_hubbard_1d");
  const std::size_t n = 2 * sites;
  PauliSum h(n);
  for (std::size_t j = 0; j + 1 < sites; ++j) {
    for (std::size_t s = 0; s < 2; ++s) h += hopping(2 * j + s, 2 * j + 2 + s, n).scaled(-t_hop);
  }
  const PauliSum half = identity_sum(n).scaled(0.5);
  for (std::size_t j = 0; j < sites; ++j) {
    PauliSum up = number(2 * j, n);
    up += half.scaled(-1.0);
    PauliSum dn = number(2 * j + 1, n);
    dn += half.scaled(-1.0);
    h += (up * dn).scaled(u_int);
  }
  std::vector<PauliTerm> terms;
  h.emit(terms);
  return Hamiltonian(n, std::move(terms));
}

Hamiltonian heisenberg_1d(std::size_t sites, double jx, double jy, double jz) {
  require_sites(sites, "heisenberg_1d");
  std::vector<PauliTerm> terms;
  for (std::size_t j = 0; j + 1 < sites; ++j) add_bond(terms, sites, j, j + 1, jx, jy, jz);
  return Hamiltonian(sites, std::move(terms));
}

Hamiltonian heisenberg_2d(std::size_t rows, std::size_t cols, double jx, double jy, double jz) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("heisenberg_2d needs at least 2x2 sites");
  const std::size_t n = rows * cols;
  std::vector<PauliTerm> terms;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t q = r * cols + c;
      if (c + 1 < cols) add_bond(terms, n, q, q + 1, jx, jy, jz);
      if (r + 1 < rows) add_bond(terms, n, q, q + cols, jx, jy, jz);
    }
  }
  return Hamiltonian(n, std::move(terms));
}

Hamiltonian tj_1d(std::size_t sites, double t_hop, double j_exchange) {
  require_sites(sites, "tj_1d");
  const std::size_t n = 2 * sites;
  PauliSum h(n);
  for (std::size_t j = 0; j + 1 < sites; ++j) {
    for (std::size_t s = 0; s < 2; ++s) h += hopping(2 * j + s, 2 * j + 2 + s, n).scaled(-t_hop);
  }
  auto spin_ops = [&](std::size_t site) {
    const PauliSum up = annihilator(2 * site, n);
    const PauliSum dn = annihilator(2 * site + 1, n);
    PauliSum sz = number(2 * site, n).scaled(0.5);
    sz += number(2 * site + 1, n).scaled(-0.5);
    PauliSum occ = number(2 * site, n);
    occ += number(2 * site + 1, n);
    return std::tuple{up.adjoint() * dn, dn.adjoint() * up, sz, occ};  // S+, S-, Sz, n
  };
  for (std::size_t j = 0; j + 1 < sites; ++j) {
    const auto [sp_i, sm_i, sz_i, n_i] = spin_ops(j);
    const auto [sp_j, sm_j, sz_j, n_j] = spin_ops(j + 1);
    PauliSum bond = sz_i * sz_j;
    bond += (sp_i * sm_j).scaled(0.5);
    bond += (sm_i * sp_j).scaled(0.5);
    bond += (n_i * n_j).scaled(-0.25);
    h += bond.scaled(j_exchange);
  }
  std::vector<PauliTerm> terms;
  h.emit(terms);
  return Hamiltonian(n, std::move(terms));
}

}  // namespace f2c

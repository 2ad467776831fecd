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

#include "f2c/dense.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace f2c::dense {

namespace {

using cd = std::complex<double>;

void require_dense_size(std::size_t n) {
  if (n == 0 || n > kMaxDenseQubits) {
    throw std::invalid_argument("dense oracle supports 1.." + std::to_string(kMaxDenseQubits) +
                                " qubits, got " + std::to_string(n));
  }
}

// Bit of the basis index that holds qubit q.
std::size_t qubit_bit(std::size_t q, std::size_t n) { return std::size_t{1} << (n - 1 - q); }

// Left-multiplies m by a 2x2 gate on qubit q.
void apply_1q(Matrix& m, std::size_t q, std::size_t n, const Eigen::Matrix2cd& g) {
  const std::size_t bit = qubit_bit(q, n);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const std::size_t j = i | bit;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const cd a = m(i, c);
      const cd b = m(j, c);
      m(i, c) = g(0, 0) * a + g(0, 1) * b;
      m(j, c) = g(1, 0) * a + g(1, 1) * b;
    }
  }
}

void apply_cx(Matrix& m, std::size_t control, std::size_t target, std::size_t n) {
  const std::size_t cbit = qubit_bit(control, n);
  const std::size_t tbit = qubit_bit(target, n);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) m.row(i).swap(m.row(i | tbit));
  }
}

}  // namespace

Matrix pauli_matrix(const PauliString& p) {
  const std::size_t n = p.size();
  require_dense_size(n);
  const std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  // P|j> = phase(j) |j xor xmask>
  std::size_t xmask = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x(q)) xmask |= qubit_bit(q, n);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    cd phase = 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = j & qubit_bit(q, n);
      switch (p.letter(q)) {
        case 'Z': if (bit) phase = -phase; break;
        case 'Y': phase *= bit ? cd(0, -1) : cd(0, 1); break;
        default: break;
      }
    }
    m(j ^ xmask, j) = phase;
  }
  return m;
}

Matrix hamiltonian_matrix(const Hamiltonian& h) {
  require_dense_size(h.n_qubits());
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.coeff * pauli_matrix(t.string);
  return m;
}

Matrix expm_hermitian(const Hamiltonian& h, double t) {
  const Matrix hm = hamiltonian_matrix(h);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hm);
  const Eigen::VectorXcd phases =
      (eig.eigenvalues().cast<cd>() * cd(0.0, -t)).array().exp().matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix pauli_rotation(const PauliString& p, double theta) {
  const Matrix pm = pauli_matrix(p);
  return std::cos(0.5 * theta) * Matrix::Identity(pm.rows(), pm.cols()) -
         cd(0.0, std::sin(0.5 * theta)) * pm;
}

PauliString majorana_string(std::size_t mode, std::size_t n) {
  const std::size_t q = mode / 2;
  if (q >= n) throw std::out_of_range("Majorana mode out of range");
  PauliString p(n);
  for (std::size_t k = 0; k < q; ++k) p.set(k, 'Z');
  p.set(q, mode % 2 == 0 ? 'X' : 'Y');
  return p;
}

Matrix majorana_matrix(std::size_t mode, std::size_t n) {
  return pauli_matrix(majorana_string(mode, n));
}

Matrix action_unitary(const Action& a, std::size_t n) {
  require_valid(a, n);
  return pauli_rotation(generator_string(a.kind, a.site, n), a.angle());
}

Matrix sequence_unitary(const std::vector<Action>& actions, std::size_t n) {
  require_dense_size(n);
  Matrix w = Matrix::Identity(std::size_t{1} << n, std::size_t{1} << n);
  for (const auto& a : actions) w = action_unitary(a, n) * w;
  return w;
}

Eigen::MatrixXd majorana_conjugation(const Matrix& w, std::size_t n) {
  require_dense_size(n);
  const double dim = static_cast<double>(std::size_t{1} << n);
  std::vector<Matrix> gammas;
  gammas.reserve(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) gammas.push_back(majorana_matrix(k, n));
  Eigen::MatrixXd r(2 * n, 2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const Matrix conj = w.adjoint() * gammas[k] * w;
    for (std::size_t l = 0; l < 2 * n; ++l) {
      // gamma_l is Hermitian and Tr(gamma_l gamma_m) = d delta_lm.
      r(k, l) = (gammas[l] * conj).trace().real() / dim;
    }
  }
  return r;
}

Matrix circuit_unitary(const Circuit& c) {
  const std::size_t n = c.n_qubits;
  require_dense_size(n);
  const std::size_t dim = std::size_t{1} << n;
  Matrix u = Matrix::Identity(dim, dim);
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& g : c.gates) {
    Eigen::Matrix2cd m;
    switch (g.kind) {
      case GateKind::CX:
        apply_cx(u, g.q0, g.q1, n);
        continue;
      case GateKind::RZ:
        m << std::exp(cd(0, -0.5 * g.angle)), 0, 0, std::exp(cd(0, 0.5 * g.angle));
        break;
      case GateKind::H: m << r, r, r, -r; break;
      case GateKind::S: m << 1, 0, 0, cd(0, 1); break;
      case GateKind::SDG: m << 1, 0, 0, cd(0, -1); break;
      case GateKind::X: m << 0, 1, 1, 0; break;
    }
    apply_1q(u, g.q0, n, m);
  }
  return u;
}

double trace_fidelity(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw std::invalid_argument("trace fidelity needs square matrices of equal shape");
  }
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

double spectral_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace f2c::dense

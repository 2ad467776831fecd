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

#include "f2c/ffsim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace f2c {

MajoranaPlane action_plane(Kind kind, int site, std::size_t n) {
  if (!is_valid(Action{kind, site, 1, kMinAngleExponent}, n)) {
    throw std::invalid_argument("site " + std::to_string(site) + " out of range for " +
                                std::string(kind_name(kind)) + " on " + std::to_string(n) +
                                " qubits");
  }
  const auto i = static_cast<std::size_t>(site);
  switch (kind) {
    case Kind::Z: return {2 * i, 2 * i + 1, 1};
    case Kind::XX: return {2 * i + 1, 2 * i + 2, 1};
    case Kind::YY: return {2 * i, 2 * i + 3, -1};
    case Kind::XY: return {2 * i + 1, 2 * i + 3, 1};
    case Kind::YX: return {2 * i, 2 * i + 2, -1};
  }
  return {};
}

void rotate_rows(Eigen::MatrixXd& m, std::size_t a, std::size_t b, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const auto cols = m.cols();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double ra = m(a, j);
    const double rb = m(b, j);
    m(a, j) = c * ra - s * rb;
    m(b, j) = s * ra + c * rb;
  }
}

FFState FFState::identity(std::size_t n) {
  if (n == 0) throw std::invalid_argument("a state needs at least one qubit");
  return FFState(n, Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

FFState FFState::from_matrix(Eigen::MatrixXd r) {
  if (r.rows() != r.cols() || r.rows() == 0 || r.rows() % 2 != 0) {
    throw std::invalid_argument("state matrix must be square with even, nonzero dimension");
  }
  const auto dim = r.rows();
  const double ortho =
      (r.transpose() * r - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (!(ortho <= kOrthogonalityTolerance)) {
    throw std::invalid_argument("state matrix is not orthogonal (max |R^T R - I| = " +
                                std::to_string(ortho) + ")");
  }
  const double det = r.determinant();
  if (std::abs(det - 1.0) > kOrthogonalityTolerance) {
    throw std::invalid_argument(
        "state matrix has determinant " + std::to_string(det) +
        "; parity-odd (det -1) transformations are not reachable by the alphabet");
  }
  FFState s(static_cast<std::size_t>(dim / 2), std::move(r));
  if (ortho > kReorthonormalizeThreshold) s.reorthonormalize();
  return s;
}

void FFState::apply(const Action& a) {
  const auto plane = action_plane(a.kind, a.site, n_);
  rotate(plane.a, plane.b, plane.sign * a.angle());
}

void FFState::rotate(std::size_t a, std::size_t b, double angle) {
  rotate_rows(r_, a, b, angle);
  note_rotation();
}

void FFState::note_rotation() {
  // Givens products drift by ~1e-16 per rotation; checking every O(n^2)
  // rotations keeps the amortized cost of the O(n^3) check at O(n).
  const std::size_t dim = 2 * n_;
  if (++rotations_since_check_ < std::max<std::size_t>(256, dim * dim)) return;
  rotations_since_check_ = 0;
  if (orthogonality_error() > kReorthonormalizeThreshold) reorthonormalize();
}

FFState FFState::transposed() const { return FFState(n_, r_.transpose()); }

double FFState::orthogonality_error() const {
  const auto dim = r_.rows();
  return (r_.transpose() * r_ - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

void FFState::reorthonormalize() {
  const auto dim = r_.rows();
  const Eigen::MatrixXd gram = r_.transpose() * r_;
  r_ = r_ * (0.5 * (3.0 * Eigen::MatrixXd::Identity(dim, dim) - gram));
}

FFState apply_action(const FFState& s, const Action& a) {
  require_valid(a, s.n_qubits());
  FFState out = s;
  out.apply(a);
  return out;
}

double CanonicalForm::fidelity() const {
  double f = 1.0;
  for (double theta : angles) f *= std::abs(std::cos(0.5 * theta));
  return f;
}

namespace {

CanonicalForm pair_angles(std::vector<double> half) {
  std::sort(half.begin(), half.end(), std::greater<>());
  CanonicalForm out;
  out.angles.reserve(half.size() / 2);
  for (std::size_t j = 0; j + 1 < half.size(); j += 2) {
    const double theta = 0.5 * (half[j] + half[j + 1]);
    out.angles.push_back(theta);
    out.phi += theta * theta;
  }
  return out;
}

// R is normal, so its symmetric part C = (R + R^T)/2 and antisymmetric part
// A = (R - R^T)/2 commute. On the eigenspace of C with eigenvalue cos(theta),
// |A v| = |sin(theta)|, which keeps small angles accurate where acos would
// lose half the digits.
CanonicalForm canonical_form_unchecked(const Eigen::MatrixXd& r) {
  const Eigen::MatrixXd sym = 0.5 * (r + r.transpose());
  const Eigen::MatrixXd anti = 0.5 * (r - r.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const auto& vals = eig.eigenvalues();
  const auto& vecs = eig.eigenvectors();
  const Eigen::MatrixXd av = anti * vecs;

  const auto dim = r.rows();
  std::vector<double> half(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    half[static_cast<std::size_t>(k)] = std::atan2(av.col(k).norm(), vals(k));
  }
  return pair_angles(std::move(half));
}

}  // namespace

CanonicalForm canonical_form_fast(const Eigen::MatrixXd& r) {
  const Eigen::MatrixXd sym = 0.5 * (r + r.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const auto& vals = eig.eigenvalues();
  std::vector<double> half(static_cast<std::size_t>(vals.size()));
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    half[static_cast<std::size_t>(k)] = std::acos(std::clamp(vals(k), -1.0, 1.0));
  }
  return pair_angles(std::move(half));
}

CanonicalForm canonical_form(const FFState& s) { return canonical_form_unchecked(s.matrix()); }

CanonicalForm canonical_form(const Eigen::MatrixXd& r) {
  if (r.rows() != r.cols() || r.rows() % 2 != 0) {
    throw std::invalid_argument("canonical form needs a square even-dimensional matrix");
  }
  const auto dim = r.rows();
  const double ortho =
      (r.transpose() * r - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (!(ortho <= kOrthogonalityTolerance)) {
    throw std::invalid_argument("matrix is not orthogonal within tolerance (" +
                                std::to_string(ortho) + ")");
  }
  return canonical_form_unchecked(r);
}

double fidelity(const FFState& s) { return canonical_form(s).fidelity(); }

std::vector<QuadraticTerm> quadratic_terms(const std::vector<PauliTerm>& terms) {
  std::vector<QuadraticTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    auto bilinear = classify(t.string);
    if (!bilinear) {
      throw std::invalid_argument("term '" + t.string.str() + "' is not free-fermionic");
    }
    out.push_back({*bilinear, t.coeff});
  }
  return out;
}

Eigen::MatrixXd assemble_generator_matrix(const std::vector<QuadraticTerm>& terms, std::size_t n) {
  // exp(-i w t P) with P = s(-i) g_a g_b rotates plane (a, b) by 2 s w t in
  // the same sense as the Givens convention of rotate_rows.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (const auto& t : terms) {
    const auto& bl = t.bilinear;
    if (bl.b >= 2 * n) throw std::invalid_argument("term acts outside the register");
    h(bl.a, bl.b) -= 2.0 * bl.sign * t.coeff;
    h(bl.b, bl.a) += 2.0 * bl.sign * t.coeff;
  }
  return h;
}

FFState assemble_generator(const std::vector<PauliTerm>& terms, std::size_t n, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  if (n == 0) throw std::invalid_argument("a state needs at least one qubit");
  for (const auto& term : terms) {
    if (term.string.size() != n) throw std::invalid_argument("term size does not match register");
  }
  const Eigen::MatrixXd h = assemble_generator_matrix(quadratic_terms(terms), n);
  const Eigen::MatrixXd r = (h * t).exp();
  return FFState::from_matrix(r);
}

}  // namespace f2c

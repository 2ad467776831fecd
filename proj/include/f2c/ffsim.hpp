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

// Free-fermion (matchgate) simulation in the Majorana picture.
//
// A Gaussian unitary W on n qubits is represented by the real 2n x 2n
// rotation R with W^dag gamma_k W = sum_l R_kl gamma_l. The map W -> R is a
// group homomorphism, so applying an action A to a state W (giving A W)
// left-multiplies R by a Givens rotation.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "f2c/action.hpp"
#include "f2c/pauli.hpp"

namespace f2c {

inline constexpr double kOrthogonalityTolerance = 1e-9;
inline constexpr double kReorthonormalizeThreshold = 1e-10;

/** Majorana plane (a, b) rotated by an action, and the rotation sign. */
struct MajoranaPlane {
  std::size_t a = 0;
  std::size_t b = 0;
  int sign = 1;

  friend bool operator==(const MajoranaPlane&, const MajoranaPlane&) = default;
};

MajoranaPlane action_plane(Kind kind, int site, std::size_t n);

/** Left-multiplies rows (a, b) of m by the Givens rotation [[c, -s], [s, c]]. */
void rotate_rows(Eigen::MatrixXd& m, std::size_t a, std::size_t b, double angle);

class FFState {
 public:
  /** Identity on n qubits. Throws for n = 0. */
  static FFState identity(std::size_t n);

  /**
   * Wraps a rotation matrix; throws std::invalid_argument unless it is
   * orthogonal to kOrthogonalityTolerance with determinant +1.
   */
  static FFState from_matrix(Eigen::MatrixXd r);

  std::size_t n_qubits() const { return n_; }
  const Eigen::MatrixXd& matrix() const { return r_; }

  /** In-place left multiplication by the action's rotation; O(n). */
  void apply(const Action& a);

  /** In-place left multiplication by a rotation on plane (a, b). */
  void rotate(std::size_t a, std::size_t b, double angle);

  FFState transposed() const;
  double orthogonality_error() const;

  /** One Newton-Schulz polar step; call when drift exceeds the threshold. */
  void reorthonormalize();

 private:
  FFState(std::size_t n, Eigen::MatrixXd r) : n_(n), r_(std::move(r)) {}
  void note_rotation();

  std::size_t n_ = 0;
  Eigen::MatrixXd r_;
  std::size_t rotations_since_check_ = 0;
};

FFState apply_action(const FFState& s, const Action& a);

struct CanonicalForm {
  /** One angle per conjugate eigenvalue pair, in [0, pi], sorted descending. */
  std::vector<double> angles;
  double phi = 0.0;  // sum of squared angles

  double fidelity() const;
};

/** Canonical rotation angles of a state; O(n^3). */
CanonicalForm canonical_form(const FFState& s);

/** Same for a raw matrix; throws if it is not orthogonal within tolerance. */
CanonicalForm canonical_form(const Eigen::MatrixXd& r);

/**
 * Eigenvalue-only variant for scoring many candidate states. Angles come from
 * acos of the symmetric part's spectrum, so tiny angles carry ~1e-8 absolute
 * error; phi and fidelity stay accurate because both are quadratic there.
 */
CanonicalForm canonical_form_fast(const Eigen::MatrixXd& r);

/** prod_j |cos(theta_j / 2)| = |Tr W| / 2^n. */
double fidelity(const FFState& s);

/** A free-fermionic term: coefficient times a classified Pauli string. */
struct QuadraticTerm {
  MajoranaBilinear bilinear;
  double coeff = 0.0;
};

/** Classifies every term; throws std::invalid_argument on a residual term. */
std::vector<QuadraticTerm> quadratic_terms(const std::vector<PauliTerm>& terms);

/** The real antisymmetric generator h with R(exp(-i H t)) = exp(h t). */
Eigen::MatrixXd assemble_generator_matrix(const std::vector<QuadraticTerm>& terms, std::size_t n);

/** exp(h t) for the free-fermionic Hamiltonian given by `terms`. */
FFState assemble_generator(const std::vector<PauliTerm>& terms, std::size_t n, double t);

}  // namespace f2c

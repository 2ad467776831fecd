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

// Brute-force 2^n-dimensional reference computations. Everything here is
// exponential in the qubit count and capped at kMaxDenseQubits.

#include <cstddef>

#include <Eigen/Dense>

#include "f2c/action.hpp"
#include "f2c/circuit.hpp"
#include "f2c/pauli.hpp"

namespace f2c::dense {

inline constexpr std::size_t kMaxDenseQubits = 10;

using Matrix = Eigen::MatrixXcd;

/** Qubit 0 is the leftmost Kronecker factor (most significant index bit). */
Matrix pauli_matrix(const PauliString& p);

Matrix hamiltonian_matrix(const Hamiltonian& h);

/** exp(-i H t) through the Hermitian eigendecomposition. */
Matrix expm_hermitian(const Hamiltonian& h, double t);

/** exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P. */
Matrix pauli_rotation(const PauliString& p, double theta);

/** Z_0...Z_{q-1} X_q for mode 2q, Z_0...Z_{q-1} Y_q for mode 2q+1. */
PauliString majorana_string(std::size_t mode, std::size_t n);
Matrix majorana_matrix(std::size_t mode, std::size_t n);

/** Unitary of one alphabet action, exp(-i angle/2 P). */
Matrix action_unitary(const Action& a, std::size_t n);

/** Unitary of an action list applied first to last (A_L ... A_1). */
Matrix sequence_unitary(const std::vector<Action>& actions, std::size_t n);

/**
 * The real 2n x 2n matrix R with W^dag gamma_k W = sum_l R_kl gamma_l,
 * extracted by Hilbert-Schmidt projection.
 */
Eigen::MatrixXd majorana_conjugation(const Matrix& w, std::size_t n);

/** Matrix of a gate sequence; list order is execution order. */
Matrix circuit_unitary(const Circuit& c);

/** |Tr(U^dag V)| / d. */
double trace_fidelity(const Matrix& u, const Matrix& v);

/** Spectral norm via singular values. */
double spectral_norm(const Matrix& m);

}  // namespace f2c::dense

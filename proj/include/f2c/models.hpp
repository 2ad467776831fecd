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

// Benchmark Hamiltonian families.
//
// Fermionic models use Jordan-Wigner with c_p = Z_0...Z_{p-1} (X_p + i Y_p)/2,
// so n_p = (1 - Z_p)/2. Spinful sites are interleaved: orbital (j, up) is
// qubit 2j and (j, down) is qubit 2j+1. Constant energy shifts (identity
// strings) are dropped since they only contribute a global phase. Lattices
// are open chains; 2D lattices are numbered row-major.

#include <cstddef>

#include "f2c/pauli.hpp"

namespace f2c {

/**
 * -t sum_{j,s} (c+_{j,s} c_{j+1,s} + h.c.) + U sum_j (n_{j,up} - 1/2)(n_{j,dn} - 1/2)
 * on 2 * sites qubits. The particle-hole symmetric interaction is U/4 Z Z.
 */
Hamiltonian fermi_hubbard_1d(std::size_t sites, double t_hop, double u_int);

/** sum over bonds of Jx XX + Jy YY + Jz ZZ, one qubit per site. */
Hamiltonian heisenberg_1d(std::size_t sites, double jx, double jy, double jz);
Hamiltonian heisenberg_2d(std::size_t rows, std::size_t cols, double jx, double jy, double jz);

/**
 * -t sum (c+ c + h.c.) + J sum_bonds (S_i . S_j - n_i n_j / 4) on 2 * sites
 * qubits, with the hopping left unprojected (no Gutzwiller constraint).
 */
Hamiltonian tj_1d(std::size_t sites, double t_hop, double j_exchange);

}  // namespace f2c

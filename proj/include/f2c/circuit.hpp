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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "f2c/action.hpp"
#include "f2c/pauli.hpp"

namespace f2c {

enum class GateKind { CX, RZ, H, S, SDG, X };

std::string_view gate_name(GateKind k);

/**
 * One native gate. RZ(theta) = exp(-i theta/2 Z); CX uses q0 as control and
 * q1 as target. Single-qubit gates leave q1 at -1.
 */
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;

  static Gate cx(int control, int target) { return {GateKind::CX, control, target, 0.0}; }
  static Gate rz(int q, double theta);
  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate s(int q) { return {GateKind::S, q, -1, 0.0}; }
  static Gate sdg(int q) { return {GateKind::SDG, q, -1, 0.0}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }

  bool is_two_qubit() const { return kind == GateKind::CX; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/** Reduces an angle to (-2pi, 2pi]. */
double reduce_rz_angle(double theta);

/** Gates in execution order: the unitary is gates.back() * ... * gates.front(). */
struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;

  void append(const Circuit& other);
  void push(const Gate& g);
};

/** Native-gate fragment implementing exp(-i angle/2 P) for the action. */
Circuit lower_action(const Action& a, std::size_t n);

Circuit lower_actions(const std::vector<Action>& actions, std::size_t n);

/**
 * CX-ladder circuit for exp(-i coeff dt P): basis changes, a CX chain onto the
 * last active qubit, RZ(2 coeff dt), and the mirrored chain.
 */
Circuit lower_pauli_exponential(const PauliTerm& t, double dt);

/** Cancels and merges adjacent gates on shared wires until a fixpoint. */
Circuit peephole(const Circuit& c);

std::size_t depth(const Circuit& c);
std::size_t gate_count(const Circuit& c);
std::size_t two_qubit_count(const Circuit& c);

/** OpenQASM 3 with a fixed three-line header and 15 significant digits. */
std::string emit_qasm(const Circuit& c);

/** Reads the subset written by emit_qasm; throws std::invalid_argument. */
Circuit parse_qasm(std::string_view text);

}  // namespace f2c

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
#include <optional>
#include <string>
#include <vector>

#include "f2c/circuit.hpp"
#include "f2c/pauli.hpp"
#include "f2c/planner.hpp"
#include "f2c/value_model.hpp"

namespace f2c {

struct TermSplit {
  std::vector<PauliTerm> free;
  std::vector<PauliTerm> residual;
};

/** Partitions by classify(); input order is kept within each part. */
TermSplit split(const Hamiltonian& h);

/**
 * Leading first-order Trotter error (t^2 / 2N) sum_{a<b} ||[H_a, H_b]||.
 * The O(t^3 / N^2) remainder is not included.
 */
double trotter_bound(const Hamiltonian& h, double t, int steps);

struct CompileJob {
  Hamiltonian hamiltonian;
  double time = 0.0;
  int steps = 1;
  SearchConfig search;
  std::optional<ValueNet> model;
};

struct StepMetrics {
  std::size_t gates = 0;
  std::size_t depth = 0;
  std::size_t two_qubit = 0;
  std::size_t free_actions = 0;
  double free_fidelity = 1.0;
  PlanMethod method = PlanMethod::Fallback;
};

struct CompileReport {
  Circuit circuit;
  std::vector<StepMetrics> per_step;
  double trotter_bound = 0.0;
  /** Planner fidelity of one step's free block raised to the step count. */
  double free_fidelity_est = 1.0;
  bool success = true;
  std::string method;  // planner tag, or "none" without free terms
};

/**
 * One Trotter step with dt = t/N is the compiled free block exp(h dt) followed
 * by one Pauli-exponential ladder per residual term in input order. Steps
 * are identical, so one is compiled and repeated N times, then the whole
 * circuit goes through the peephole pass. `success` is false only when the
 * search fails with the fallback disabled.
 */
CompileReport compile(const CompileJob& job);

}  // namespace f2c

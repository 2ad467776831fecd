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
#include <string_view>
#include <vector>

#include "f2c/action.hpp"
#include "f2c/ffsim.hpp"
#include "f2c/value_model.hpp"

namespace f2c {

/** One dyadic term sign * pi / 2^k. */
struct AngleTerm {
  int sign = 1;
  int k = 1;

  friend bool operator==(const AngleTerm&, const AngleTerm&) = default;
};

/** pi / 2^21: the finest resolution reachable with k <= 20. */
double min_angle_tolerance();

/**
 * Shortest signed-digit expansion of theta over {+-pi/2^k : k = 1..20} with
 * |theta - sum| <= max(tol, pi/2^21). theta is first reduced to (-pi, pi];
 * pi itself needs two pi/2 terms. Among shortest expansions the search
 * prefers terms that all share theta's sign, then the smaller residual, then
 * the lexicographically smaller term list. Terms are sorted by k.
 */
std::vector<AngleTerm> discretize_angle(double theta, double tol);

double sum_terms(const std::vector<AngleTerm>& terms);

enum class PlanMethod { Greedy, Beam, Heuristic, Fallback, Hybrid };

std::string_view method_name(PlanMethod m);

struct PlanResult {
  std::vector<Action> actions;
  bool success = false;
  double final_fidelity = 0.0;
  std::size_t steps = 0;
  PlanMethod method = PlanMethod::Greedy;
};

enum class TieBreak {
  PhiThenOrder,  // score, then smaller phi, then alphabet order
  OrderOnly,     // score, then alphabet order
};

struct SearchConfig {
  std::size_t beam_width = 1;
  double epsilon = 1e-6;
  int h_max = 100;
  TieBreak tie_break = TieBreak::PhiThenOrder;
  bool fallback_on_failure = true;
  bool fallback_only = false;  // skip the search entirely

  void validate() const;
};

/**
 * Value-guided rollout from target: S_0 = target^T and every step scores all
 * alphabet successors. A successor that passes the fidelity test always ranks
 * first (V(terminal) = 0); otherwise successors rank by V, then by the tie
 * break. Keeps the best beam_width partial plans per step and stops at the
 * first success or after h_max steps.
 */
PlanResult beam_rollout(const FFState& target, const ValueNet& net, const FeatureSpec& spec,
                        const SearchConfig& cfg);

/** beam_rollout with width 1. */
PlanResult greedy_rollout(const FFState& target, const ValueNet& net, const FeatureSpec& spec,
                          const SearchConfig& cfg);

/** Same loop scored by -phi(S'), the model-free baseline. */
PlanResult heuristic_rollout(const FFState& target, const SearchConfig& cfg);

/**
 * Deterministic backstop: Givens QR of target^T over adjacent Majorana planes
 * (Z planes (2i, 2i+1) and XX planes (2i+1, 2i+2)), each continuous angle
 * discretized in closed loop. Always succeeds for det = +1 targets.
 */
PlanResult fallback_compile(const FFState& target, double epsilon);

/**
 * Search with the net (greedy or beam) or with the heuristic when net is
 * null; on failure with fallback_on_failure, recompile with the fallback
 * and tag the result Hybrid. With fallback_only, or for a single-qubit
 * target (the search alphabet needs two qubits), only the fallback runs.
 */
PlanResult compile_free_part(const FFState& target, const ValueNet* net, const SearchConfig& cfg);

/** Replays a plan from target^T and returns the final fidelity. */
double replay_fidelity(const FFState& target, const std::vector<Action>& actions);

}  // namespace f2c

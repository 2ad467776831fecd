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

// Synthesis as an episodic decision process.
//
// The residual is S_t = V_t (U*)^T in the rotation picture, where V_t is the
// product of the actions taken so far (last action leftmost). Applying an
// action left-multiplies S_t, so the process is Markov in S_t alone. This is
// conjugate to (U*)^T V_t and has the same spectrum, hence the same fidelity.

#include <cstddef>

#include "f2c/action.hpp"
#include "f2c/ffsim.hpp"

namespace f2c {

struct EnvConfig {
  std::size_t n = 2;
  double epsilon = 1e-6;
  int h_max = 100;

  /** Throws std::invalid_argument unless 0 < epsilon < 1 and h_max >= 1. */
  void validate() const;
};

struct StepResult {
  FFState state;
  double reward = -1.0;
  bool done = false;
  bool success = false;
  double fidelity = 0.0;
};

/**
 * True when fidelity(s) > 1 - epsilon. States with max|R - I| > 0.5 are
 * rejected without an eigendecomposition: such a state has a canonical angle
 * above 0.5, so its fidelity is at most cos(0.25) < 1 - epsilon whenever
 * epsilon < 1 - cos(0.25).
 */
bool is_terminal(const FFState& s, double epsilon);

/** S_0 = target^T. Throws if the target's size does not match cfg.n. */
FFState reset(const FFState& target, const EnvConfig& cfg);

/**
 * One transition from S at step index t. Throws std::logic_error when
 * t >= h_max, since the episode has already ended.
 */
StepResult step(const FFState& s, const Action& a, int t, const EnvConfig& cfg);

/** Stateful wrapper that tracks the step counter and refuses steps after done. */
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  const FFState& reset(const FFState& target);
  StepResult step(const Action& a);

  const EnvConfig& config() const { return cfg_; }
  const FFState& state() const { return state_; }
  int t() const { return t_; }
  bool done() const { return done_; }
  bool success() const { return success_; }
  double episode_return() const { return -static_cast<double>(t_); }

 private:
  EnvConfig cfg_;
  FFState state_ = FFState::identity(1);
  int t_ = 0;
  bool done_ = true;
  bool success_ = false;
};

}  // namespace f2c

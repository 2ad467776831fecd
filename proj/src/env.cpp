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

#include "f2c/env.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace f2c {

namespace {

constexpr double kPrefilterEntry = 0.5;

double prefilter_epsilon_limit() { return 1.0 - std::cos(0.5 * kPrefilterEntry); }

double max_deviation_from_identity(const Eigen::MatrixXd& r) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      m = std::max(m, std::abs(r(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return m;
}

}  // namespace

void EnvConfig::validate() const {
  if (n < 1) throw std::invalid_argument("environment needs at least one qubit");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (h_max < 1) throw std::invalid_argument("h_max must be at least 1");
}

bool is_terminal(const FFState& s, double epsilon) {
  if (epsilon < prefilter_epsilon_limit() &&
      max_deviation_from_identity(s.matrix()) > kPrefilterEntry) {
    return false;
  }
  return fidelity(s) > 1.0 - epsilon;
}

FFState reset(const FFState& target, const EnvConfig& cfg) {
  cfg.validate();
  if (target.n_qubits() != cfg.n) {
    throw std::invalid_argument("target has " + std::to_string(target.n_qubits()) +
                                " qubits, environment expects " + std::to_string(cfg.n));
  }
  return target.transposed();
}

StepResult step(const FFState& s, const Action& a, int t, const EnvConfig& cfg) {
  if (t < 0 || t >= cfg.h_max) {
    throw std::logic_error("step " + std::to_string(t) + " is past the horizon " +
                           std::to_string(cfg.h_max));
  }
  StepResult r{apply_action(s, a)};
  r.fidelity = fidelity(r.state);
  r.success = r.fidelity > 1.0 - cfg.epsilon;
  r.done = r.success || t + 1 == cfg.h_max;
  return r;
}

Environment::Environment(EnvConfig cfg) : cfg_(cfg) { cfg_.validate(); }

const FFState& Environment::reset(const FFState& target) {
  state_ = f2c::reset(target, cfg_);
  t_ = 0;
  success_ = fidelity(state_) > 1.0 - cfg_.epsilon;
  done_ = success_;
  return state_;
}

StepResult Environment::step(const Action& a) {
  if (done_) throw std::logic_error("step called on a finished episode");
  StepResult r = f2c::step(state_, a, t_, cfg_);
  state_ = r.state;
  ++t_;
  done_ = r.done;
  success_ = r.success;
  return r;
}

}  // namespace f2c

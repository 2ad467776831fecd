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

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "f2c/value_model.hpp"

namespace f2c::testing {

struct GradCheck {
  double norm_rel = 0.0;    // |g_a - g_n| / max(|g_a|, |g_n|) over the whole vector
  double worst_rel = 0.0;   // max_i |a_i - n_i| / max(|a_i|, |n_i|, floor)
  std::size_t params = 0;
};

/** Every trainable scalar of the net, in a fixed order. */
inline std::vector<double*> parameters(ValueNet& net) {
  std::vector<double*> out;
  for (auto& l : net.layers) {
    for (Eigen::Index i = 0; i < l.w.size(); ++i) out.push_back(l.w.data() + i);
    for (Eigen::Index i = 0; i < l.b.size(); ++i) out.push_back(l.b.data() + i);
  }
  out.push_back(&net.alpha);
  out.push_back(&net.beta);
  return out;
}

inline std::vector<double> flatten(const NetGrad& g) {
  std::vector<double> out;
  for (std::size_t l = 0; l < g.dw.size(); ++l) {
    out.insert(out.end(), g.dw[l].data(), g.dw[l].data() + g.dw[l].size());
    out.insert(out.end(), g.db[l].data(), g.db[l].data() + g.db[l].size());
  }
  out.push_back(g.dalpha);
  out.push_back(g.dbeta);
  return out;
}

/**
 * Central differences of loss(net) against the analytic gradient. The loss
 * callback must fill the NetGrad when one is passed.
 */
inline GradCheck check_gradient(ValueNet net,
                                const std::function<double(const ValueNet&, NetGrad*)>& loss,
                                double h = 1e-6, double floor = 1e-6) {
  NetGrad g = NetGrad::zeros_like(net);
  loss(net, &g);
  const auto analytic = flatten(g);
  auto params = parameters(net);
  std::vector<double> numeric(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = *params[i];
    *params[i] = saved + h;
    const double up = loss(net, nullptr);
    *params[i] = saved - h;
    const double down = loss(net, nullptr);
    *params[i] = saved;
    numeric[i] = (up - down) / (2.0 * h);
  }
  GradCheck out;
  out.params = params.size();
  double diff2 = 0.0, a2 = 0.0, n2 = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double d = analytic[i] - numeric[i];
    diff2 += d * d;
    a2 += analytic[i] * analytic[i];
    n2 += numeric[i] * numeric[i];
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), floor});
    out.worst_rel = std::max(out.worst_rel, std::abs(d) / scale);
  }
  out.norm_rel = std::sqrt(diff2) / std::max({std::sqrt(a2), std::sqrt(n2), 1e-300});
  return out;
}

/** A small random tanh net and a random input for it. */
struct GradCase {
  ValueNet net;
  Eigen::VectorXd x;
  Eigen::VectorXd x_next;
  double phi = 0.0;
  double label = 0.0;
};

inline GradCase random_grad_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> width(2, 8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const FeatureSpec spec{2, 1, 10};
  std::vector<std::size_t> hidden(1 + seed % 2);
  for (auto& w : hidden) w = width(rng);
  GradCase c{ValueNet::create(spec, hidden, Activation::Tanh, seed)};
  c.net.alpha = u(rng);
  c.net.beta = u(rng);
  c.x = Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(spec.dim()), [&] { return u(rng); });
  c.x_next =
      Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(spec.dim()), [&] { return u(rng); });
  c.phi = 2.0 * std::abs(u(rng));
  // Labels on both sides of the Huber kink.
  c.label = c.net.predict(c.x) + 3.0 * u(rng);
  return c;
}

}  // namespace f2c::testing

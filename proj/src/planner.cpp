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

#include "f2c/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "f2c/env.hpp"

namespace f2c {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLevels = kMaxAngleExponent;

// Partial expansion during the digit search; sums are kept in integer units
// of pi / 2^20 so that equal partial sums compare exactly.
struct DigitState {
  std::int64_t sum = 0;
  int weight = 0;
  bool same_sign = true;
  std::vector<AngleTerm> terms;
};

bool lex_less(const std::vector<AngleTerm>& a, const std::vector<AngleTerm>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const AngleTerm& x, const AngleTerm& y) {
                                        if (x.k != y.k) return x.k < y.k;
                                        return x.sign < y.sign;
                                      });
}

// Order among states with the same partial sum: their futures coincide.
bool better_prefix(const DigitState& a, const DigitState& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.same_sign != b.same_sign) return a.same_sign;
  return lex_less(a.terms, b.terms);
}

double reduce_to_pi(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

double min_angle_tolerance() { return kPi / std::ldexp(1.0, kLevels + 1); }

double sum_terms(const std::vector<AngleTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.sign * kPi / std::ldexp(1.0, t.k);
  return s;
}

std::vector<AngleTerm> discretize_angle(double theta, double tol) {
  if (!std::isfinite(theta)) throw std::invalid_argument("cannot discretize a non-finite angle");
  if (std::isnan(tol)) throw std::invalid_argument("tolerance is NaN");
  theta = reduce_to_pi(theta);
  const double unit = kPi / std::ldexp(1.0, kLevels);
  const double target = theta / unit;
  const double tol_units = std::max(tol, min_angle_tolerance()) / unit;
  const int theta_sign = theta > 0 ? 1 : (theta < 0 ? -1 : 0);

  std::map<std::int64_t, DigitState> live;
  live.emplace(0, DigitState{});
  int best_weight = std::abs(target) <= tol_units ? 0 : kLevels + 2;

  for (int k = 1; k <= kLevels; ++k) {
    const std::int64_t place = std::int64_t{1} << (kLevels - k);
    const int span = k == 1 ? 2 : 1;  // pi = pi/2 + pi/2
    const double reach = static_cast<double>(place) + tol_units;
    std::map<std::int64_t, DigitState> next;
    for (const auto& [sum, st] : live) {
      for (int d = -span; d <= span; ++d) {
        DigitState cand = st;
        cand.sum = sum + d * place;
        if (std::abs(target - static_cast<double>(cand.sum)) > reach) continue;
        if (d != 0) {
          const int sign = d > 0 ? 1 : -1;
          cand.weight += std::abs(d);
          if (cand.weight > best_weight) continue;
          cand.same_sign = cand.same_sign && sign == theta_sign;
          for (int rep = 0; rep < std::abs(d); ++rep) cand.terms.push_back({sign, k});
        }
        if (std::abs(target - static_cast<double>(cand.sum)) <= tol_units) {
          best_weight = std::min(best_weight, cand.weight);
        }
        auto it = next.find(cand.sum);
        if (it == next.end()) {
          next.emplace(cand.sum, std::move(cand));
        } else if (better_prefix(cand, it->second)) {
          it->second = std::move(cand);
        }
      }
    }
    live = std::move(next);
  }

  const DigitState* best = nullptr;
  double best_residual = 0.0;
  for (const auto& [sum, st] : live) {
    const double residual = std::abs(target - static_cast<double>(sum));
    if (residual > tol_units) continue;
    const bool wins = [&] {
      if (!best) return true;
      if (st.weight != best->weight) return st.weight < best->weight;
      if (st.same_sign != best->same_sign) return st.same_sign;
      if (residual != best_residual) return residual < best_residual;
      return lex_less(st.terms, best->terms);
    }();
    if (wins) {
      best = &st;
      best_residual = residual;
    }
  }
  if (!best) throw std::logic_error("digit search found no expansion");  // nearest grid point fits
  return best->terms;
}

std::string_view method_name(PlanMethod m) {
  switch (m) {
    case PlanMethod::Greedy: return "greedy";
    case PlanMethod::Beam: return "beam";
    case PlanMethod::Heuristic: return "heuristic";
    case PlanMethod::Fallback: return "fallback";
    case PlanMethod::Hybrid: return "hybrid";
  }
  return "?";
}

void SearchConfig::validate() const {
  if (beam_width < 1) throw std::invalid_argument("beam width must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
  if (h_max < 1) throw std::invalid_argument("h_max must be at least 1");
}

double replay_fidelity(const FFState& target, const std::vector<Action>& actions) {
  FFState s = target.transposed();
  for (const auto& a : actions) {
    require_valid(a, s.n_qubits());
    s.apply(a);
  }
  return fidelity(s);
}

namespace {

struct Node {
  FFState state;
  std::vector<Action> actions;
};

struct Candidate {
  std::size_t parent = 0;
  std::size_t action = 0;  // alphabet index
  FFState state;
  CanonicalForm form;
  bool terminal = false;
  double score = 0.0;
};

// Scores every candidate in place; higher is better.
using Scorer = std::function<void(std::vector<Candidate>&, const std::vector<Node>&, int step)>;

PlanResult run_search(const FFState& target, const SearchConfig& cfg, const Scorer& score,
                      PlanMethod method) {
  cfg.validate();
  const std::size_t n = target.n_qubits();
  const auto alpha = alphabet(n);
  const double threshold = 1.0 - cfg.epsilon;

  PlanResult result;
  result.method = method;
  std::vector<Node> beam{Node{target.transposed(), {}}};
  {
    const double f = fidelity(beam.front().state);
    if (f > threshold) {
      result.success = true;
      result.final_fidelity = f;
      return result;
    }
  }

  std::vector<Candidate> cands;
  std::vector<std::size_t> order;
  for (int step = 0; step < cfg.h_max; ++step) {
    cands.clear();
    cands.reserve(beam.size() * alpha.size());
    for (std::size_t p = 0; p < beam.size(); ++p) {
      for (std::size_t ai = 0; ai < alpha.size(); ++ai) {
        FFState next = beam[p].state;
        next.apply(alpha[ai]);
        CanonicalForm form = canonical_form_fast(next.matrix());
        const bool terminal = form.fidelity() > threshold;
        cands.push_back(Candidate{p, ai, std::move(next), std::move(form), terminal, 0.0});
      }
    }
    score(cands, beam, step);

    order.resize(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const bool use_phi = cfg.tie_break == TieBreak::PhiThenOrder;
    auto ranks_before = [&](std::size_t x, std::size_t y) {
      const Candidate& a = cands[x];
      const Candidate& b = cands[y];
      if (a.terminal != b.terminal) return a.terminal;
      if (a.score != b.score) return a.score > b.score;
      if (use_phi && a.form.phi != b.form.phi) return a.form.phi < b.form.phi;
      if (a.parent != b.parent) return a.parent < b.parent;
      return a.action < b.action;
    };
    const std::size_t keep = std::min(cfg.beam_width, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                      order.end(), ranks_before);

    std::vector<Node> next_beam;
    next_beam.reserve(keep);
    for (std::size_t r = 0; r < keep; ++r) {
      Candidate& c = cands[order[r]];
      Node node{std::move(c.state), beam[c.parent].actions};
      node.actions.push_back(alpha[c.action]);
      next_beam.push_back(std::move(node));
    }
    const bool solved = cands[order.front()].terminal;
    beam = std::move(next_beam);
    if (solved) break;
  }

  const Node& best = beam.front();
  result.actions = best.actions;
  result.steps = best.actions.size();
  result.final_fidelity = fidelity(best.state);
  result.success = result.final_fidelity > threshold;
  return result;
}

Scorer value_scorer(const ValueNet& net, const FeatureSpec& spec) {
  return [&net, spec](std::vector<Candidate>& cands, const std::vector<Node>& beam, int step) {
    if (cands.empty()) return;
    const auto alpha = alphabet(spec.n);
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(spec.dim()),
                       static_cast<Eigen::Index>(cands.size()));
    std::vector<Action> history;
    std::size_t current_parent = cands.front().parent + 1;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Candidate& c = cands[i];
      if (c.parent != current_parent) {
        history = beam[c.parent].actions;
        history.push_back(alpha[c.action]);
        current_parent = c.parent;
      }
      history.back() = alpha[c.action];
      xs.col(static_cast<Eigen::Index>(i)) = featurize(spec, c.form, history, step + 1);
    }
    const Eigen::VectorXd v = net.predict_batch(xs);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      cands[i].score = v(static_cast<Eigen::Index>(i));
    }
  };
}

}  // namespace

PlanResult beam_rollout(const FFState& target, const ValueNet& net, const FeatureSpec& spec,
                        const SearchConfig& cfg) {
  if (spec.n != target.n_qubits()) {
    throw std::invalid_argument("feature spec is for " + std::to_string(spec.n) +
                                " qubits, target has " + std::to_string(target.n_qubits()));
  }
  if (net.input_dim() != spec.dim()) {
    throw std::invalid_argument("network input width does not match the feature spec");
  }
  return run_search(target, cfg, value_scorer(net, spec),
                    cfg.beam_width == 1 ? PlanMethod::Greedy : PlanMethod::Beam);
}

PlanResult greedy_rollout(const FFState& target, const ValueNet& net, const FeatureSpec& spec,
                          const SearchConfig& cfg) {
  SearchConfig one = cfg;
  one.beam_width = 1;
  return beam_rollout(target, net, spec, one);
}

PlanResult heuristic_rollout(const FFState& target, const SearchConfig& cfg) {
  auto neg_phi = [](std::vector<Candidate>& cands, const std::vector<Node>&, int) {
    for (auto& c : cands) c.score = -c.form.phi;
  };
  return run_search(target, cfg, neg_phi, PlanMethod::Heuristic);
}

namespace {

// Plane (p, p+1): a Z generator for even p, an XX generator for odd p. Both
// rotate with sign +1, so the action angle equals the Givens angle.
Action plane_action(std::size_t p, const AngleTerm& term) {
  if (p % 2 == 0) return {Kind::Z, static_cast<int>(p / 2), term.sign, term.k};
  return {Kind::XX, static_cast<int>((p - 1) / 2), term.sign, term.k};
}

// Closed-loop Givens QR: each zeroing angle is measured on the matrix after
// the previously discretized rotations, so discretization errors are not
// compounded. `wt` holds the working matrix transposed, making the row
// rotations contiguous column updates.
void qr_sweep(Eigen::MatrixXd& wt, double tol, std::vector<Action>& out) {
  const auto dim = static_cast<std::size_t>(wt.rows());
  auto at = [&](std::size_t row, std::size_t col) { return wt(static_cast<Eigen::Index>(col),
                                                              static_cast<Eigen::Index>(row)); };
  for (std::size_t j = 0; j + 1 < dim; ++j) {
    for (std::size_t i = dim - 1; i > j; --i) {
      const double x = at(i - 1, j);
      const double y = at(i, j);
      double phi;
      if (i == j + 1) {
        // Last rotation of the column: leave a positive pivot.
        if (y == 0.0 && x > 0.0) continue;
        phi = std::atan2(-y, x);
      } else {
        if (y == 0.0) continue;
        phi = x == 0.0 ? -std::copysign(kPi / 2, y) : std::atan(-y / x);
      }
      const auto terms = discretize_angle(phi, tol);
      if (terms.empty()) continue;
      for (const auto& t : terms) out.push_back(plane_action(i - 1, t));
      const double applied = sum_terms(terms);
      const double c = std::cos(applied);
      const double s = std::sin(applied);
      auto ra = wt.col(static_cast<Eigen::Index>(i - 1));
      auto rb = wt.col(static_cast<Eigen::Index>(i));
      for (Eigen::Index k = 0; k < wt.rows(); ++k) {
        const double a = ra(k);
        const double b = rb(k);
        ra(k) = c * a - s * b;
        rb(k) = s * a + c * b;
      }
    }
  }
}

}  // namespace

PlanResult fallback_compile(const FFState& target, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
  const double det = target.matrix().determinant();
  if (std::abs(det - 1.0) > kOrthogonalityTolerance) {
    throw std::invalid_argument("fallback needs a det = +1 target");
  }
  const std::size_t n = target.n_qubits();
  const double threshold = 1.0 - epsilon;
  const double count = static_cast<double>(n * (2 * n - 1));
  const double floor_tol = min_angle_tolerance();
  double tol = std::max(std::sqrt(8.0 * epsilon / count), floor_tol);

  PlanResult result;
  result.method = PlanMethod::Fallback;
  // S_0 = target^T, whose transpose is the target itself.
  const Eigen::MatrixXd s0_t = target.matrix();

  for (;;) {
    Eigen::MatrixXd wt = s0_t;
    std::vector<Action> actions;
    qr_sweep(wt, tol, actions);
    const double f = replay_fidelity(target, actions);
    if (f > threshold) {
      result.actions = std::move(actions);
      result.final_fidelity = f;
      break;
    }
    if (tol > floor_tol) {
      tol = std::max(0.5 * tol, floor_tol);
      continue;
    }
    // Already at the finest grid: sweep the remaining residual again.
    for (int round = 0; round < 4 && f <= threshold; ++round) {
      FFState residual = target.transposed();
      for (const auto& a : actions) residual.apply(a);
      Eigen::MatrixXd rt = residual.matrix().transpose();
      qr_sweep(rt, floor_tol, actions);
      const double refined = replay_fidelity(target, actions);
      if (refined > threshold) {
        result.actions = std::move(actions);
        result.final_fidelity = refined;
        break;
      }
    }
    if (result.final_fidelity <= threshold) {
      throw std::runtime_error("fallback could not reach the requested fidelity");
    }
    break;
  }
  result.steps = result.actions.size();
  result.success = true;
  return result;
}

PlanResult compile_free_part(const FFState& target, const ValueNet* net, const SearchConfig& cfg) {
  cfg.validate();
  if (cfg.fallback_only || target.n_qubits() < 2) return fallback_compile(target, cfg.epsilon);

  PlanResult r;
  if (net) {
    if (!net->spec) throw std::invalid_argument("value network carries no feature spec");
    r = cfg.beam_width == 1 ? greedy_rollout(target, *net, *net->spec, cfg)
                            : beam_rollout(target, *net, *net->spec, cfg);
  } else {
    r = heuristic_rollout(target, cfg);
  }
  if (r.success || !cfg.fallback_on_failure) return r;
  PlanResult fb = fallback_compile(target, cfg.epsilon);
  fb.method = PlanMethod::Hybrid;
  return fb;
}

}  // namespace f2c

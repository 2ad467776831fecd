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

// Value function V(S_t, history) ~ return-to-go, as an MLP over engineered
// features, trained by Monte Carlo regression with a learned affine anchor to
// the geometric distance phi, then optionally refined by one-step TD.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "f2c/action.hpp"
#include "f2c/ffsim.hpp"
#include "f2c/trajectory.hpp"

namespace f2c {

/**
 * Feature layout for n qubits and a history window of m actions:
 *
 *   [0, n)        canonical angles, descending, zero padded
 *   n, n+1        phi, fidelity
 *   n+2 .. n+6    action counts per kind over the whole history
 *   n+7           t / h_max
 *   n+8 + 9j ...  j-th most recent action: kind one-hot (5), signed angle,
 *                 Pauli weight, site / n, generator index / generator count
 *
 * The last slot indexes the (kind, site) generator rather than the full
 * alphabet entry, so two actions that differ only in k differ only in the
 * signed-angle slot.
 */
struct FeatureSpec {
  std::size_t n = 2;
  std::size_t history = 8;
  int h_max = 100;

  static constexpr std::size_t kPerAction = 9;

  std::size_t dim() const { return n + 8 + kPerAction * history; }
  std::uint64_t hash() const;
  std::string hash_hex() const;

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

Eigen::VectorXd featurize(const FeatureSpec& spec, const CanonicalForm& form,
                          std::span<const Action> history, int t);

Eigen::VectorXd featurize(const FeatureSpec& spec, const FFState& s,
                          std::span<const Action> history, int t);

enum class Activation { Relu, Tanh, Identity };

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

/** y = act(w x + b); w has one row per output. */
struct Layer {
  Eigen::MatrixXd w;
  Eigen::VectorXd b;
  Activation act = Activation::Identity;
};

struct ValueNet {
  std::vector<Layer> layers;
  double alpha = 0.0;
  double beta = 0.0;
  std::string feature_spec_hash;
  std::optional<FeatureSpec> spec;  // present when the file records it

  /**
   * Widths [spec.dim(), hidden..., 1] with `hidden_act` on hidden layers and
   * an identity output. Uniform He (relu) or Glorot (tanh) initialisation.
   */
  static ValueNet create(const FeatureSpec& spec, const std::vector<std::size_t>& hidden,
                         Activation hidden_act, std::uint64_t seed);

  std::size_t input_dim() const;
  std::size_t parameter_count() const;

  /** Throws std::invalid_argument on inconsistent shapes or non-finite values. */
  void validate() const;

  double predict(const Eigen::VectorXd& x) const;

  /** One prediction per column of xs. */
  Eigen::VectorXd predict_batch(const Eigen::MatrixXd& xs) const;
};

/** Gradient buffers shaped like a ValueNet. */
struct NetGrad {
  std::vector<Eigen::MatrixXd> dw;
  std::vector<Eigen::VectorXd> db;
  double dalpha = 0.0;
  double dbeta = 0.0;

  static NetGrad zeros_like(const ValueNet& net);
  void scale(double s);
};

double huber(double r, double delta);
double huber_derivative(double r, double delta);

struct LossConfig {
  double delta = 1.0;
  bool geometric_reg = true;
};

/**
 * Huber(V - label) + (V - (alpha + beta phi))^2, the second term only with
 * geometric_reg. Adds d loss / d params into `grad` when given. Throws
 * std::runtime_error if the forward pass is not finite.
 */
double mc_loss(const ValueNet& net, const Eigen::VectorXd& x, double phi, double label,
               const LossConfig& cfg, NetGrad* grad = nullptr);

/** -1 + V(next), or -1 when the next state is terminal (V(terminal) = 0). */
double td_target(const ValueNet& net, const Eigen::VectorXd& x_next, bool next_terminal);

/** Huber(V(x) - target) with the target held constant. */
double td_loss(const ValueNet& net, const Eigen::VectorXd& x, double target, double delta,
               NetGrad* grad = nullptr);

struct TrainSample {
  Eigen::VectorXd x;
  Eigen::VectorXd x_next;
  double phi = 0.0;
  double label = 0.0;
  bool next_terminal = false;
};

/** Featurizes every frame of every episode. */
std::vector<TrainSample> build_samples(const std::vector<Episode>& episodes,
                                       const FeatureSpec& spec, double epsilon = 1e-6);

struct TrainConfig {
  double huber_delta = 1.0;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  std::size_t batch_size = 64;
  int mc_epochs = 10;
  int td_epochs = 0;
  std::uint64_t seed = 0;
  bool use_geometric_reg = true;
};

struct LossRecord {
  std::string phase;  // "mc" or "td"
  int epoch = 0;
  double loss = 0.0;
};

struct TrainResult {
  ValueNet net;
  std::vector<LossRecord> trace;
};

/**
 * Minibatch SGD with momentum: mc_epochs of Monte Carlo regression, then
 * td_epochs of TD refinement without the regularizer. Throws
 * std::runtime_error when an epoch's mean loss stops being finite.
 */
TrainResult train(ValueNet net, const std::vector<TrainSample>& samples, const TrainConfig& cfg);

void write_loss_trace(const std::vector<LossRecord>& trace, const std::string& path);

inline constexpr int kWeightsVersion = 1;

std::string render_weights(const ValueNet& net);
void save_weights(const ValueNet& net, const std::string& path);

/**
 * Parses the weight format. When `expected` is given, refuses a file whose
 * feature_spec_hash differs or whose input width does not match.
 */
ValueNet parse_weights(const std::string& json_text, const FeatureSpec* expected = nullptr);
ValueNet load_weights(const std::string& path, const FeatureSpec* expected = nullptr);

}  // namespace f2c

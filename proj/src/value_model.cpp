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

#include "f2c/value_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace f2c {

using ojson = nlohmann::ordered_json;

std::uint64_t FeatureSpec::hash() const {
  const std::string text = "f2-features/v1;n=" + std::to_string(n) +
                           ";m=" + std::to_string(history) + ";h_max=" + std::to_string(h_max) +
                           ";dim=" + std::to_string(dim());
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string FeatureSpec::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

Eigen::VectorXd featurize(const FeatureSpec& spec, const CanonicalForm& form,
                          std::span<const Action> history, int t) {
  const std::size_t n = spec.n;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.dim()));
  for (std::size_t j = 0; j < std::min(n, form.angles.size()); ++j) {
    f(static_cast<Eigen::Index>(j)) = form.angles[j];
  }
  auto at = [&](std::size_t i) -> double& { return f(static_cast<Eigen::Index>(i)); };
  at(n) = form.phi;
  at(n + 1) = form.fidelity();
  for (const auto& a : history) at(n + 2 + static_cast<std::size_t>(a.kind)) += 1.0;
  at(n + 7) = static_cast<double>(t) / spec.h_max;

  const double gens = static_cast<double>(generator_count(n));
  const std::size_t shown = std::min(spec.history, history.size());
  for (std::size_t j = 0; j < shown; ++j) {
    const Action& a = history[history.size() - 1 - j];
    const std::size_t base = n + 8 + FeatureSpec::kPerAction * j;
    at(base + static_cast<std::size_t>(a.kind)) = 1.0;
    at(base + 5) = a.angle();
    at(base + 6) = kind_weight(a.kind);
    at(base + 7) = static_cast<double>(a.site) / static_cast<double>(n);
    at(base + 8) = static_cast<double>(generator_index(a.kind, a.site, n)) / gens;
  }
  return f;
}

Eigen::VectorXd featurize(const FeatureSpec& spec, const FFState& s,
                          std::span<const Action> history, int t) {
  if (s.n_qubits() != spec.n) throw std::invalid_argument("state size does not match features");
  return featurize(spec, canonical_form(s), history, t);
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Tanh: return "tanh";
    case Activation::Identity: return "identity";
  }
  return "?";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::Relu;
  if (name == "tanh") return Activation::Tanh;
  if (name == "identity") return Activation::Identity;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

namespace {

void activate(Eigen::MatrixXd& z, Activation act) {
  switch (act) {
    case Activation::Relu: z = z.cwiseMax(0.0); break;
    case Activation::Tanh: z = z.array().tanh().matrix(); break;
    case Activation::Identity: break;
  }
}

// Derivative of the activation expressed through its output.
Eigen::MatrixXd activation_slope(const Eigen::MatrixXd& out, Activation act) {
  switch (act) {
    case Activation::Relu: return (out.array() > 0.0).cast<double>().matrix();
    case Activation::Tanh: return (1.0 - out.array().square()).matrix();
    case Activation::Identity: break;
  }
  return Eigen::MatrixXd::Ones(out.rows(), out.cols());
}

struct ForwardCache {
  std::vector<Eigen::MatrixXd> outputs;  // outputs[0] is the input batch
};

Eigen::RowVectorXd forward(const ValueNet& net, const Eigen::MatrixXd& xs, ForwardCache* cache) {
  Eigen::MatrixXd a = xs;
  if (cache) {
    cache->outputs.clear();
    cache->outputs.push_back(a);
  }
  for (const auto& layer : net.layers) {
    Eigen::MatrixXd z = layer.w * a;
    z.colwise() += layer.b;
    activate(z, layer.act);
    a = std::move(z);
    if (cache) cache->outputs.push_back(a);
  }
  return a.row(0);
}

// Adds sum_i dv_i * dV_i/dparams into grad.
void backward(const ValueNet& net, const ForwardCache& cache, const Eigen::RowVectorXd& dv,
              NetGrad& grad) {
  Eigen::MatrixXd g = dv;
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    const auto& layer = net.layers[l];
    const Eigen::MatrixXd delta =
        g.cwiseProduct(activation_slope(cache.outputs[l + 1], layer.act));
    grad.dw[l] += delta * cache.outputs[l].transpose();
    grad.db[l] += delta.rowwise().sum();
    if (l > 0) g = layer.w.transpose() * delta;
  }
}

void require_finite(const Eigen::RowVectorXd& v) {
  if (!v.allFinite()) throw std::runtime_error("value network produced a non-finite output");
}

Eigen::MatrixXd stack_columns(const std::vector<TrainSample>& samples,
                              std::span<const std::size_t> idx, bool next) {
  const auto dim = samples.front().x.size();
  Eigen::MatrixXd xs(dim, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    xs.col(static_cast<Eigen::Index>(i)) = next ? samples[idx[i]].x_next : samples[idx[i]].x;
  }
  return xs;
}

}  // namespace

ValueNet ValueNet::create(const FeatureSpec& spec, const std::vector<std::size_t>& hidden,
                          Activation hidden_act, std::uint64_t seed) {
  ValueNet net;
  net.spec = spec;
  net.feature_spec_hash = spec.hash_hex();
  std::mt19937_64 rng(seed);
  std::size_t in = spec.dim();
  std::vector<std::size_t> widths = hidden;
  widths.push_back(1);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const std::size_t out = widths[i];
    if (out == 0) throw std::invalid_argument("layer widths must be positive");
    const bool last = i + 1 == widths.size();
    const Activation act = last ? Activation::Identity : hidden_act;
    const double limit = act == Activation::Relu ? std::sqrt(6.0 / static_cast<double>(in))
                                                 : std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> u(-limit, limit);
    Layer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out)),
                act};
    for (Eigen::Index r = 0; r < layer.w.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.w.cols(); ++c) layer.w(r, c) = u(rng);
    }
    net.layers.push_back(std::move(layer));
    in = out;
  }
  return net;
}

std::size_t ValueNet::input_dim() const {
  return layers.empty() ? 0 : static_cast<std::size_t>(layers.front().w.cols());
}

std::size_t ValueNet::parameter_count() const {
  std::size_t count = 2;
  for (const auto& l : layers) count += static_cast<std::size_t>(l.w.size() + l.b.size());
  return count;
}

void ValueNet::validate() const {
  if (layers.empty()) throw std::invalid_argument("value network has no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.w.rows() == 0 || l.w.cols() == 0) throw std::invalid_argument("empty layer");
    if (l.b.size() != l.w.rows()) {
      throw std::invalid_argument("layer " + std::to_string(i) + " bias length mismatch");
    }
    if (i > 0 && l.w.cols() != layers[i - 1].w.rows()) {
      throw std::invalid_argument("layer " + std::to_string(i) + " input width mismatch");
    }
    if (!l.w.allFinite() || !l.b.allFinite()) {
      throw std::invalid_argument("layer " + std::to_string(i) + " has non-finite values");
    }
  }
  if (layers.back().w.rows() != 1) throw std::invalid_argument("output layer must be scalar");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("alpha and beta must be finite");
  }
  if (spec && input_dim() != spec->dim()) {
    throw std::invalid_argument("input width " + std::to_string(input_dim()) +
                                " does not match the feature spec (" +
                                std::to_string(spec->dim()) + ")");
  }
}

double ValueNet::predict(const Eigen::VectorXd& x) const { return forward(*this, x, nullptr)(0); }

Eigen::VectorXd ValueNet::predict_batch(const Eigen::MatrixXd& xs) const {
  return forward(*this, xs, nullptr).transpose();
}

NetGrad NetGrad::zeros_like(const ValueNet& net) {
  NetGrad g;
  for (const auto& l : net.layers) {
    g.dw.push_back(Eigen::MatrixXd::Zero(l.w.rows(), l.w.cols()));
    g.db.push_back(Eigen::VectorXd::Zero(l.b.size()));
  }
  return g;
}

void NetGrad::scale(double s) {
  for (auto& m : dw) m *= s;
  for (auto& v : db) v *= s;
  dalpha *= s;
  dbeta *= s;
}

double huber(double r, double delta) {
  const double a = std::abs(r);
  return a <= delta ? 0.5 * r * r : delta * (a - 0.5 * delta);
}

double huber_derivative(double r, double delta) { return std::clamp(r, -delta, delta); }

double mc_loss(const ValueNet& net, const Eigen::VectorXd& x, double phi, double label,
               const LossConfig& cfg, NetGrad* grad) {
  ForwardCache cache;
  const Eigen::RowVectorXd v = forward(net, x, grad ? &cache : nullptr);
  require_finite(v);
  const double r = v(0) - label;
  double loss = huber(r, cfg.delta);
  double dv = huber_derivative(r, cfg.delta);
  if (cfg.geometric_reg) {
    const double e = v(0) - (net.alpha + net.beta * phi);
    loss += e * e;
    dv += 2.0 * e;
    if (grad) {
      grad->dalpha -= 2.0 * e;
      grad->dbeta -= 2.0 * e * phi;
    }
  }
  if (grad) backward(net, cache, Eigen::RowVectorXd::Constant(1, dv), *grad);
  return loss;
}

double td_target(const ValueNet& net, const Eigen::VectorXd& x_next, bool next_terminal) {
  return next_terminal ? -1.0 : -1.0 + net.predict(x_next);
}

double td_loss(const ValueNet& net, const Eigen::VectorXd& x, double target, double delta,
               NetGrad* grad) {
  ForwardCache cache;
  const Eigen::RowVectorXd v = forward(net, x, grad ? &cache : nullptr);
  require_finite(v);
  const double r = v(0) - target;
  if (grad) {
    backward(net, cache, Eigen::RowVectorXd::Constant(1, huber_derivative(r, delta)), *grad);
  }
  return huber(r, delta);
}

std::vector<TrainSample> build_samples(const std::vector<Episode>& episodes,
                                       const FeatureSpec& spec, double epsilon) {
  std::vector<TrainSample> out;
  for (const auto& e : episodes) {
    if (e.n != spec.n) throw std::invalid_argument("episode size does not match feature spec");
    const std::span<const Action> acts(e.actions);
    for (const auto& fr : frames(e, epsilon)) {
      const auto t = fr.t;
      const CanonicalForm form = canonical_form(fr.state);
      TrainSample s;
      s.x = featurize(spec, form, acts.first(t), static_cast<int>(t));
      s.x_next = featurize(spec, fr.next_state, acts.first(t + 1), static_cast<int>(t + 1));
      s.phi = form.phi;
      s.label = fr.label;
      s.next_terminal = fr.next_terminal;
      out.push_back(std::move(s));
    }
  }
  return out;
}

TrainResult train(ValueNet net, const std::vector<TrainSample>& samples, const TrainConfig& cfg) {
  if (samples.empty()) throw std::invalid_argument("training needs at least one sample");
  if (!(cfg.huber_delta > 0.0)) throw std::invalid_argument("huber delta must be positive");
  if (cfg.batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (cfg.mc_epochs < 0 || cfg.td_epochs < 0) throw std::invalid_argument("negative epochs");
  net.validate();
  if (static_cast<std::size_t>(samples.front().x.size()) != net.input_dim()) {
    throw std::invalid_argument("sample width does not match the network input");
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  NetGrad velocity = NetGrad::zeros_like(net);
  TrainResult result;

  auto apply_update = [&](const NetGrad& g) {
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      velocity.dw[l] = cfg.momentum * velocity.dw[l] - cfg.learning_rate * g.dw[l];
      velocity.db[l] = cfg.momentum * velocity.db[l] - cfg.learning_rate * g.db[l];
      net.layers[l].w += velocity.dw[l];
      net.layers[l].b += velocity.db[l];
    }
    velocity.dalpha = cfg.momentum * velocity.dalpha - cfg.learning_rate * g.dalpha;
    velocity.dbeta = cfg.momentum * velocity.dbeta - cfg.learning_rate * g.dbeta;
    net.alpha += velocity.dalpha;
    net.beta += velocity.dbeta;
  };

  auto run_phase = [&](const std::string& phase, int epochs) {
    const bool td = phase == "td";
    for (int epoch = 1; epoch <= epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      double total = 0.0;
      for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
        const std::span<const std::size_t> idx(order.data() + start, stop - start);
        const auto b = static_cast<Eigen::Index>(idx.size());

        ForwardCache cache;
        const Eigen::RowVectorXd v = forward(net, stack_columns(samples, idx, false), &cache);
        Eigen::RowVectorXd target(b);
        if (td) {
          const Eigen::RowVectorXd v_next =
              forward(net, stack_columns(samples, idx, true), nullptr);
          for (Eigen::Index i = 0; i < b; ++i) {
            target(i) = samples[idx[i]].next_terminal ? -1.0 : -1.0 + v_next(i);
          }
        } else {
          for (Eigen::Index i = 0; i < b; ++i) target(i) = samples[idx[i]].label;
        }

        NetGrad g = NetGrad::zeros_like(net);
        Eigen::RowVectorXd dv(b);
        for (Eigen::Index i = 0; i < b; ++i) {
          const double r = v(i) - target(i);
          total += huber(r, cfg.huber_delta);
          dv(i) = huber_derivative(r, cfg.huber_delta);
          if (!td && cfg.use_geometric_reg) {
            const double phi = samples[idx[i]].phi;
            const double e = v(i) - (net.alpha + net.beta * phi);
            total += e * e;
            dv(i) += 2.0 * e;
            g.dalpha -= 2.0 * e;
            g.dbeta -= 2.0 * e * phi;
          }
        }
        backward(net, cache, dv, g);
        g.scale(1.0 / static_cast<double>(b));
        apply_update(g);
      }
      const double mean = total / static_cast<double>(order.size());
      if (!std::isfinite(mean)) {
        const std::string last =
            result.trace.empty() ? "none" : std::to_string(result.trace.back().loss);
        throw std::runtime_error("training diverged in " + phase + " epoch " +
                                 std::to_string(epoch) + " (last finite mean loss " + last +
                                 ", learning rate " + std::to_string(cfg.learning_rate) + ")");
      }
      result.trace.push_back({phase, epoch, mean});
    }
  };

  run_phase("mc", cfg.mc_epochs);
  run_phase("td", cfg.td_epochs);
  result.net = std::move(net);
  return result;
}

void write_loss_trace(const std::vector<LossRecord>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "phase,epoch,loss\n";
  char buf[64];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%.17g", r.loss);
    out << r.phase << ',' << r.epoch << ',' << buf << '\n';
  }
}

std::string render_weights(const ValueNet& net) {
  net.validate();
  ojson j;
  j["format"] = "f2-valuenet";
  j["version"] = kWeightsVersion;
  j["feature_spec_hash"] = net.feature_spec_hash;
  if (net.spec) {
    j["feature_spec"] = {{"n_qubits", net.spec->n},
                         {"history", net.spec->history},
                         {"h_max", net.spec->h_max}};
  }
  j["alpha"] = net.alpha;
  j["beta"] = net.beta;
  ojson layers = ojson::array();
  for (const auto& l : net.layers) {
    ojson lj;
    lj["rows"] = l.w.rows();
    lj["cols"] = l.w.cols();
    ojson w = ojson::array();
    for (Eigen::Index r = 0; r < l.w.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.w.cols(); ++c) w.push_back(l.w(r, c));
    }
    lj["w"] = std::move(w);
    lj["b"] = std::vector<double>(l.b.data(), l.b.data() + l.b.size());
    lj["act"] = std::string(activation_name(l.act));
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j.dump() + "\n";
}

void save_weights(const ValueNet& net, const std::string& path) {
  const std::string text = render_weights(net);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ValueNet parse_weights(const std::string& json_text, const FeatureSpec* expected) {
  ValueNet net;
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.value("format", "") != "f2-valuenet") {
      throw std::invalid_argument("not an f2-valuenet file");
    }
    const int version = j.at("version").get<int>();
    if (version != kWeightsVersion) {
      throw std::invalid_argument("unsupported weights version " + std::to_string(version));
    }
    net.feature_spec_hash = j.at("feature_spec_hash").get<std::string>();
    if (j.contains("feature_spec")) {
      const auto& fs = j.at("feature_spec");
      FeatureSpec spec{fs.at("n_qubits").get<std::size_t>(), fs.at("history").get<std::size_t>(),
                       fs.at("h_max").get<int>()};
      if (spec.hash_hex() != net.feature_spec_hash) {
        throw std::invalid_argument("feature_spec does not match feature_spec_hash");
      }
      net.spec = spec;
    }
    net.alpha = j.at("alpha").get<double>();
    net.beta = j.at("beta").get<double>();
    for (const auto& lj : j.at("layers")) {
      const auto rows = lj.at("rows").get<Eigen::Index>();
      const auto cols = lj.at("cols").get<Eigen::Index>();
      const auto w = lj.at("w").get<std::vector<double>>();
      const auto b = lj.at("b").get<std::vector<double>>();
      if (rows <= 0 || cols <= 0 || static_cast<Eigen::Index>(w.size()) != rows * cols) {
        throw std::invalid_argument("layer weight count does not match rows x cols");
      }
      if (static_cast<Eigen::Index>(b.size()) != rows) {
        throw std::invalid_argument("layer bias count does not match rows");
      }
      Layer layer{Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                 Eigen::RowMajor>>(w.data(), rows, cols),
                  Eigen::Map<const Eigen::VectorXd>(b.data(), rows),
                  parse_activation(lj.at("act").get<std::string>())};
      net.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed weights: ") + e.what());
  }
  net.validate();
  if (expected) {
    if (net.feature_spec_hash != expected->hash_hex()) {
      throw std::invalid_argument("feature spec mismatch: weights were trained for " +
                                  net.feature_spec_hash + ", this run needs " +
                                  expected->hash_hex());
    }
    if (net.input_dim() != expected->dim()) {
      throw std::invalid_argument("network input width does not match the feature spec");
    }
    net.spec = *expected;
  }
  return net;
}

ValueNet load_weights(const std::string& path, const FeatureSpec* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open weights '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_weights(ss.str(), expected);
}

}  // namespace f2c

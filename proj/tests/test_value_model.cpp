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

#include <cmath>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "f2c/trajectory.hpp"
#include "f2c/value_model.hpp"
#include "grad_check.hpp"
#include "test_util.hpp"

namespace f2c {
namespace {

const std::string kData = F2C_TEST_DATA;

TEST(FeatureSpec, DimensionAndHash) {
  const FeatureSpec spec{6, 8, 100};
  EXPECT_EQ(spec.dim(), 86u);
  // FNV-1a of the spec text, computed independently.
  EXPECT_EQ(spec.hash_hex(), "55739b6fc0b0a0b8");
  EXPECT_EQ((FeatureSpec{2, 1, 10}.hash_hex()), "ff47fb56832c90c3");
  EXPECT_EQ((FeatureSpec{4, 8, 100}.hash_hex()), "2035b9cb19562da8");
  EXPECT_NE((FeatureSpec{6, 8, 50}.hash()), spec.hash());
}

TEST(Featurize, Layout) {
  const FeatureSpec spec{3, 2, 10};
  FFState s = FFState::identity(3);
  const std::vector<Action> hist = {{Kind::Z, 2, 1, 1}, {Kind::XX, 0, -1, 2}, {Kind::YX, 1, 1, 3}};
  for (const auto& a : hist) s.apply(a);
  const auto form = canonical_form(s);
  const Eigen::VectorXd f = featurize(spec, s, hist, 3);
  ASSERT_EQ(f.size(), 3 + 8 + 18);
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(f(j), form.angles[j]);
  EXPECT_DOUBLE_EQ(f(3), form.phi);
  EXPECT_DOUBLE_EQ(f(4), form.fidelity());
  // Kind counts in alphabet order XX, YY, XY, YX, Z.
  EXPECT_EQ(f(5), 1.0);
  EXPECT_EQ(f(6), 0.0);
  EXPECT_EQ(f(7), 0.0);
  EXPECT_EQ(f(8), 1.0);
  EXPECT_EQ(f(9), 1.0);
  EXPECT_DOUBLE_EQ(f(10), 0.3);
  // Most recent action first: YX at site 1, +pi/8.
  EXPECT_EQ(f(11 + 3), 1.0);
  EXPECT_EQ(f.segment(11, 5).sum(), 1.0);
  EXPECT_DOUBLE_EQ(f(16), std::numbers::pi / 8);
  EXPECT_EQ(f(17), 2.0);
  EXPECT_DOUBLE_EQ(f(18), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(f(19), static_cast<double>(generator_index(Kind::YX, 1, 3)) /
                              static_cast<double>(generator_count(3)));
  // Then XX at site 0, -pi/4. The oldest action falls outside the window.
  EXPECT_EQ(f(20), 1.0);
  EXPECT_DOUBLE_EQ(f(25), -std::numbers::pi / 4);
  EXPECT_EQ(f(26), 2.0);
  EXPECT_EQ(f(27), 0.0);
}

TEST(Featurize, EmptyHistoryIsZeroPadded) {
  const FeatureSpec spec{2, 4, 100};
  const Eigen::VectorXd f = featurize(spec, FFState::identity(2), {}, 0);
  EXPECT_EQ(f(3), 1.0);
  EXPECT_EQ(f.cwiseAbs().sum(), 1.0);
}

TEST(ValueNet, CreateShapesAndDeterminism) {
  const FeatureSpec spec{4, 8, 100};
  const auto a = ValueNet::create(spec, {16, 8}, Activation::Relu, 3);
  const auto b = ValueNet::create(spec, {16, 8}, Activation::Relu, 3);
  ASSERT_EQ(a.layers.size(), 3u);
  EXPECT_EQ(a.layers[0].w.rows(), 16);
  EXPECT_EQ(a.layers[0].w.cols(), 84);
  EXPECT_EQ(a.layers[2].w.rows(), 1);
  EXPECT_EQ(a.layers[2].act, Activation::Identity);
  EXPECT_EQ(a.input_dim(), 84u);
  EXPECT_EQ(a.parameter_count(), 16u * 84 + 16 + 8 * 16 + 8 + 8 + 1 + 2);
  EXPECT_EQ(render_weights(a), render_weights(b));
  EXPECT_EQ(a.feature_spec_hash, spec.hash_hex());
  // He-uniform bound sqrt(6 / fan_in).
  EXPECT_LE(a.layers[0].w.cwiseAbs().maxCoeff(), std::sqrt(6.0 / 84.0));
}

TEST(ValueNet, HandBuiltFixturePredictions) {
  const FeatureSpec spec{2, 1, 10};
  const ValueNet net = load_weights(kData + "/tiny_net.json", &spec);
  // Hidden units relu(0.5 - phi) and relu(2 F - 1); output h0 - 3 h1 + 0.25.
  EXPECT_DOUBLE_EQ(net.predict(featurize(spec, FFState::identity(2), {}, 0)), -2.25);
  const Action a{Kind::Z, 0, 1, 1};
  const FFState s = apply_action(FFState::identity(2), a);
  const std::vector<Action> hist = {a};
  EXPECT_NEAR(net.predict(featurize(spec, s, hist, 1)), 0.25 - 3.0 * (std::sqrt(2.0) - 1.0),
              1e-12);
  EXPECT_EQ(net.alpha, -0.5);
  EXPECT_EQ(net.beta, -2.0);
}

TEST(ValueNet, BatchMatchesSingle) {
  const FeatureSpec spec{3, 8, 100};
  const auto net = ValueNet::create(spec, {12, 6}, Activation::Relu, 5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd xs(spec.dim(), 7);
  for (Eigen::Index i = 0; i < xs.size(); ++i) xs.data()[i] = u(rng);
  const Eigen::VectorXd batch = net.predict_batch(xs);
  for (Eigen::Index c = 0; c < xs.cols(); ++c) {
    EXPECT_NEAR(batch(c), net.predict(xs.col(c)), 1e-14);
  }
}

TEST(Losses, HuberPieces) {
  EXPECT_DOUBLE_EQ(huber(0.5, 1.0), 0.125);
  EXPECT_DOUBLE_EQ(huber(-3.0, 1.0), 2.5);
  EXPECT_DOUBLE_EQ(huber_derivative(0.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(huber_derivative(-3.0, 1.0), -1.0);
}

TEST(Losses, McLossValue) {
  const FeatureSpec spec{2, 1, 10};
  const ValueNet net = load_weights(kData + "/tiny_net.json", &spec);
  const Eigen::VectorXd x = featurize(spec, FFState::identity(2), {}, 0);
  // V = -2.25, label -3: Huber(0.75) = 0.28125; regularizer (V - alpha - beta * 0)^2 = 3.0625.
  EXPECT_DOUBLE_EQ(mc_loss(net, x, 0.0, -3.0, {1.0, false}), 0.28125);
  EXPECT_DOUBLE_EQ(mc_loss(net, x, 0.0, -3.0, {1.0, true}), 0.28125 + 3.0625);
}

TEST(Losses, TdTarget) {
  const FeatureSpec spec{2, 1, 10};
  const ValueNet net = load_weights(kData + "/tiny_net.json", &spec);
  const Eigen::VectorXd x = featurize(spec, FFState::identity(2), {}, 0);
  EXPECT_DOUBLE_EQ(td_target(net, x, true), -1.0);
  EXPECT_DOUBLE_EQ(td_target(net, x, false), -3.25);
}

TEST(Losses, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = testing::random_grad_case(seed);
    const LossConfig cfg{0.7, true};
    const auto mc = testing::check_gradient(c.net, [&](const ValueNet& n, NetGrad* g) {
      return mc_loss(n, c.x, c.phi, c.label, cfg, g);
    });
    EXPECT_LT(mc.norm_rel, 1e-6) << "seed " << seed;
    const double target = td_target(c.net, c.x_next, false);
    const auto td = testing::check_gradient(c.net, [&](const ValueNet& n, NetGrad* g) {
      return td_loss(n, c.x, target, 0.7, g);
    });
    EXPECT_LT(td.norm_rel, 1e-6) << "seed " << seed;
  }
}

TEST(Losses, NonFiniteForwardThrows) {
  auto c = testing::random_grad_case(1);
  c.x(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(mc_loss(c.net, c.x, 0.0, -1.0, {}), std::runtime_error);
}

TEST(Weights, RoundTripIsByteStable) {
  const FeatureSpec spec{3, 4, 50};
  ValueNet net = ValueNet::create(spec, {5}, Activation::Tanh, 9);
  net.alpha = 0.1;
  net.beta = -1.0 / 3.0;
  net.spec = spec;
  const std::string text = render_weights(net);
  const ValueNet back = parse_weights(text, &spec);
  EXPECT_EQ(render_weights(back), text);
  EXPECT_EQ(back.layers[0].w, net.layers[0].w);
  EXPECT_EQ(back.beta, net.beta);
}

TEST(Weights, Rejections) {
  const FeatureSpec spec{2, 1, 10};
  const FeatureSpec other{3, 1, 10};
  const std::string good = testing::read_file(kData + "/tiny_net.json");
  EXPECT_NO_THROW(parse_weights(good, &spec));
  EXPECT_THROW(parse_weights(good, &other), std::invalid_argument);
  EXPECT_THROW(parse_weights("{", nullptr), std::invalid_argument);
  EXPECT_THROW(parse_weights(R"({"format":"other"})", nullptr), std::invalid_argument);

  auto j = good;
  j.replace(j.find("\"version\": 1"), 12, "\"version\": 2");
  EXPECT_THROW(parse_weights(j, nullptr), std::invalid_argument);

  j = good;
  j.replace(j.find("\"rows\": 2"), 9, "\"rows\": 3");
  EXPECT_THROW(parse_weights(j, nullptr), std::invalid_argument);

  j = good;
  j.replace(j.find("\"h_max\": 10"), 11, "\"h_max\": 11");
  EXPECT_THROW(parse_weights(j, nullptr), std::invalid_argument);

  EXPECT_THROW(load_weights(kData + "/missing.json"), std::runtime_error);
}

TEST(Train, ReducesLossDeterministically) {
  const FeatureSpec spec{3, 8, 100};
  const auto episodes = generate_episodes(3, 60, {1, 8}, 4);
  const auto samples = build_samples(episodes, spec);
  std::size_t frames_total = 0;
  for (const auto& e : episodes) frames_total += e.actions.size();
  EXPECT_EQ(samples.size(), frames_total);

  const auto net = ValueNet::create(spec, {32}, Activation::Relu, 1);
  TrainConfig cfg;
  cfg.mc_epochs = 30;
  cfg.td_epochs = 3;
  cfg.batch_size = 32;
  const auto a = train(net, samples, cfg);
  const auto b = train(net, samples, cfg);
  ASSERT_EQ(a.trace.size(), 33u);
  EXPECT_EQ(a.trace.front().phase, "mc");
  EXPECT_EQ(a.trace.back().phase, "td");
  EXPECT_LT(a.trace[29].loss, 0.5 * a.trace[0].loss);
  EXPECT_EQ(render_weights(a.net), render_weights(b.net));
}

TEST(Train, DivergenceIsReported) {
  const FeatureSpec spec{2, 8, 100};
  const auto samples = build_samples(generate_episodes(2, 20, {1, 8}, 4), spec);
  TrainConfig cfg;
  cfg.learning_rate = 1e6;
  cfg.mc_epochs = 50;
  try {
    train(ValueNet::create(spec, {16}, Activation::Relu, 1), samples, cfg);
    FAIL() << "training with a huge learning rate should diverge";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("diverged"), std::string::npos);
  }
}

TEST(Train, LossTraceCsv) {
  const auto path = testing::temp_path("loss.csv");
  write_loss_trace({{"mc", 1, 0.5}, {"td", 1, 0.25}}, path);
  EXPECT_EQ(testing::read_file(path), "phase,epoch,loss\nmc,1,0.5\ntd,1,0.25\n");
}

}  // namespace
}  // namespace f2c

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

// f2c command-line driver. Exit codes: 0 success, 1 bad input, 2 compile failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "f2c/circuit.hpp"
#include "f2c/dense.hpp"
#include "f2c/models.hpp"
#include "f2c/planner.hpp"
#include "f2c/trajectory.hpp"
#include "f2c/trotter.hpp"
#include "f2c/value_model.hpp"

namespace {

using ojson = nlohmann::ordered_json;
using namespace f2c;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitCompileFailure = 2;

// Raised for user errors that should map to exit code 1.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("F2C_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw BadInput(std::string("F2C_SEED is not an unsigned integer: '") + env + "'");
  }
  return 0;
}

std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadInput("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw BadInput("write to '" + path + "' failed");
}

// Runs fn(i) for i in [0, count) on `jobs` threads; results must be stored by index.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::optional<ValueNet> load_model(const std::string& path) {
  if (path.empty()) return std::nullopt;
  ValueNet net = load_weights(path);
  if (!net.spec) throw BadInput("weights file '" + path + "' does not record its feature_spec");
  return net;
}

// ---------------------------------------------------------------- compile

struct CompileArgs {
  std::string hamiltonian;
  double time = 0.0;
  int steps = 1;
  double epsilon = 1e-6;
  std::string model;
  std::size_t beam = 1;
  int h_max = 100;
  bool fallback_only = false;
  bool no_fallback = false;
  bool oracle_check = false;
  std::string out;
  std::string metrics;
};

ojson step_json(const StepMetrics& m) {
  ojson j;
  j["gates"] = m.gates;
  j["depth"] = m.depth;
  j["two_qubit"] = m.two_qubit;
  j["free_actions"] = m.free_actions;
  j["free_fidelity"] = m.free_fidelity;
  j["method"] = std::string(method_name(m.method));
  return j;
}

int run_compile(const CompileArgs& a) {
  CompileJob job;
  job.hamiltonian = load_hamiltonian(a.hamiltonian);
  job.time = a.time;
  job.steps = a.steps;
  job.search.epsilon = a.epsilon;
  job.search.beam_width = a.beam;
  job.search.h_max = a.h_max;
  job.search.fallback_only = a.fallback_only;
  job.search.fallback_on_failure = !a.no_fallback;
  job.model = load_model(a.model);
  const std::size_t n = job.hamiltonian.n_qubits();
  if (a.oracle_check && n > dense::kMaxDenseQubits) {
    throw BadInput("--oracle-check supports at most " + std::to_string(dense::kMaxDenseQubits) +
                   " qubits, the Hamiltonian has " + std::to_string(n));
  }

  CompileReport r;
  try {
    r = compile(job);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::runtime_error& e) {
    std::cerr << "f2c compile: " << e.what() << "\n";
    return kExitCompileFailure;
  }

  ojson m;
  m["gates"] = gate_count(r.circuit);
  m["depth"] = depth(r.circuit);
  m["two_qubit"] = two_qubit_count(r.circuit);
  m["trotter_bound"] = r.trotter_bound;
  m["free_fidelity_est"] = r.free_fidelity_est;
  m["method"] = r.method;
  m["success"] = r.success;
  m["n_qubits"] = n;
  m["time"] = a.time;
  m["steps"] = a.steps;
  ojson steps = ojson::array();
  for (const auto& s : r.per_step) steps.push_back(step_json(s));
  m["per_step"] = std::move(steps);
  if (a.oracle_check) {
    // Against exact evolution, so the value includes the Trotter error.
    const dense::Matrix exact = dense::expm_hermitian(job.hamiltonian, job.time);
    m["oracle_fidelity"] = dense::trace_fidelity(dense::circuit_unitary(r.circuit), exact);
  }

  write_text(a.out, emit_qasm(r.circuit));
  write_text(a.metrics, m.dump(2) + "\n");
  if (!r.success) {
    std::cerr << "f2c compile: free block not solved within h_max=" << a.h_max
              << " and the fallback is disabled\n";
    return kExitCompileFailure;
  }
  return kExitOk;
}

// --------------------------------------------------------------- gen-data

struct GenArgs {
  std::size_t n = 0;
  std::size_t episodes = 0;
  int min_len = 1;
  int max_len = 64;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  std::string out;
};

int run_gen_data(const GenArgs& a) {
  if (a.n < 2) throw BadInput("--n-qubits must be at least 2");
  if (a.min_len < 1 || a.max_len < a.min_len || a.max_len > 100) {
    throw BadInput("episode lengths need 1 <= --min-len <= --max-len <= 100");
  }
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  Dataset d{a.n, seed,
            generate_episodes(a.n, a.episodes, {a.min_len, a.max_len}, seed,
                              a.jobs ? a.jobs : default_jobs())};
  write_dataset(d, a.out);
  return kExitOk;
}

// ------------------------------------------------------------------ train

struct TrainArgs {
  std::string data;
  int epochs = 10;
  int td_epochs = 0;
  double huber_delta = 1.0;
  bool no_geometric_reg = false;
  double lr = 1e-3;
  double momentum = 0.9;
  std::size_t batch_size = 64;
  std::vector<std::size_t> hidden{256, 256};
  std::string activation = "relu";
  std::size_t history = 8;
  int h_max = 100;
  double epsilon = 1e-6;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_train(const TrainArgs& a) {
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  Dataset d;
  try {
    d = read_dataset(a.data);
  } catch (const std::runtime_error& e) {
    throw BadInput(e.what());
  }
  const FeatureSpec spec{d.n, a.history, a.h_max};
  const auto samples = build_samples(d.episodes, spec, a.epsilon);
  if (samples.empty()) throw BadInput("dataset '" + a.data + "' has no frames");

  ValueNet net = ValueNet::create(spec, a.hidden, parse_activation(a.activation), seed);
  TrainConfig cfg;
  cfg.huber_delta = a.huber_delta;
  cfg.learning_rate = a.lr;
  cfg.momentum = a.momentum;
  cfg.batch_size = a.batch_size;
  cfg.mc_epochs = a.epochs;
  cfg.td_epochs = a.td_epochs;
  cfg.seed = mix_seed(seed);
  cfg.use_geometric_reg = !a.no_geometric_reg;
  TrainResult r = train(std::move(net), samples, cfg);
  r.net.spec = spec;
  save_weights(r.net, a.out);
  write_loss_trace(r.trace, a.out + ".loss.csv");
  if (!r.trace.empty()) {
    std::cout << "frames " << samples.size() << ", final " << r.trace.back().phase
              << " loss " << r.trace.back().loss << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- eval

struct EvalArgs {
  std::string model;
  std::size_t n = 0;
  std::size_t targets = 100;
  double dt = 0.02;
  double epsilon = 1e-6;
  std::size_t beam = 1;
  int h_max = 100;
  bool fallback_only = false;
  bool no_fallback = false;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  std::string report;
};

struct Stats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  Stats s{0.0, xs.front(), xs.front()};
  for (double x : xs) {
    s.mean += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean /= static_cast<double>(xs.size());
  return s;
}

ojson stats_json(const Stats& s) { return ojson{{"mean", s.mean}, {"min", s.min}, {"max", s.max}}; }

// Upper edge exponent of the decade holding e, clamped to [-12, 0].
int decade(double e) {
  if (!(e > 1e-12)) return -12;
  return std::clamp(static_cast<int>(std::ceil(std::log10(e) - 1e-12)), -12, 0);
}

int run_eval(const EvalArgs& a) {
  if (a.n < 1) throw BadInput("--n-qubits must be at least 1");
  if (a.targets < 1) throw BadInput("--targets must be at least 1");
  if (!(a.dt > 0.0)) throw BadInput("--dt must be positive");
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const auto model = load_model(a.model);
  if (model && model->spec->n != a.n) {
    throw BadInput("model was trained for " + std::to_string(model->spec->n) + " qubits, not " +
                   std::to_string(a.n));
  }
  SearchConfig cfg;
  cfg.epsilon = a.epsilon;
  cfg.beam_width = a.beam;
  cfg.h_max = a.h_max;
  cfg.fallback_only = a.fallback_only;
  cfg.fallback_on_failure = !a.no_fallback;
  cfg.validate();

  struct Outcome {
    PlanResult plan;
    std::size_t gates = 0, depth = 0, two_qubit = 0;
  };
  std::vector<Outcome> out(a.targets);
  parallel_for(a.targets, a.jobs ? a.jobs : default_jobs(), [&](std::size_t i) {
    const FreeTarget t = random_free_target(a.n, a.dt, episode_seed(seed, i));
    Outcome o{compile_free_part(t.state, model ? &*model : nullptr, cfg)};
    const Circuit c = peephole(lower_actions(o.plan.actions, a.n));
    o.gates = gate_count(c);
    o.depth = depth(c);
    o.two_qubit = two_qubit_count(c);
    out[i] = std::move(o);
  });

  std::size_t solved = 0;
  std::vector<double> steps, gates, depths, twoq, errors;
  std::vector<std::size_t> histogram(13, 0);
  ojson methods = ojson::object();
  for (const auto& o : out) {
    const double err = std::max(0.0, 1.0 - o.plan.final_fidelity);
    errors.push_back(err);
    ++histogram[static_cast<std::size_t>(decade(err) + 12)];
    const std::string name(method_name(o.plan.method));
    methods[name] = methods.value(name, 0) + 1;
    if (!o.plan.success) continue;
    ++solved;
    steps.push_back(static_cast<double>(o.plan.steps));
    gates.push_back(static_cast<double>(o.gates));
    depths.push_back(static_cast<double>(o.depth));
    twoq.push_back(static_cast<double>(o.two_qubit));
  }

  ojson hist = ojson::array();
  std::size_t within = 0;
  for (int e = -12; e <= 0; ++e) {
    const std::size_t count = histogram[static_cast<std::size_t>(e + 12)];
    char label[16];
    std::snprintf(label, sizeof label, "1e%d", e);
    hist.push_back(ojson{{"upper", label}, {"count", count}});
    if (e <= -6) within += count;
  }

  const double total = static_cast<double>(a.targets);
  ojson r;
  r["n_qubits"] = a.n;
  r["targets"] = a.targets;
  r["dt"] = a.dt;
  r["epsilon"] = a.epsilon;
  r["seed"] = seed;
  r["planner"] = a.fallback_only ? "fallback" : (model ? (a.beam > 1 ? "beam" : "greedy") : "heuristic");
  r["success_rate"] = static_cast<double>(solved) / total;
  r["mean_steps"] = stats_of(steps).mean;
  r["mean_error"] = stats_of(errors).mean;
  r["max_error"] = stats_of(errors).max;
  r["fraction_error_le_1e-6"] = static_cast<double>(within) / total;
  r["error_histogram"] = std::move(hist);
  r["methods"] = std::move(methods);
  r["gates"] = stats_json(stats_of(gates));
  r["depth"] = stats_json(stats_of(depths));
  r["two_qubit"] = stats_json(stats_of(twoq));
  write_text(a.report, r.dump(2) + "\n");
  return kExitOk;
}

// ------------------------------------------------------------------ bound

struct BoundArgs {
  std::string hamiltonian;
  double time = 0.0;
  int steps = 1;
};

int run_bound(const BoundArgs& a) {
  const Hamiltonian h = load_hamiltonian(a.hamiltonian);
  std::printf("%.17g\n", trotter_bound(h, a.time, a.steps));
  return kExitOk;
}

// ------------------------------------------------------------------ model

struct ModelArgs {
  std::string kind;
  std::size_t sites = 4;
  std::size_t rows = 2;
  std::size_t cols = 2;
  double t = 1.0;
  double u = 4.0;
  double j = 1.0;
  double jx = 1.0, jy = 1.0, jz = 1.0;
  std::string out;
};

int run_model(const ModelArgs& a) {
  Hamiltonian h;
  if (a.kind == "fermi-hubbard-1d") h = fermi_hubbard_1d(a.sites, a.t, a.u);
  else if (a.kind == "heisenberg-1d") h = heisenberg_1d(a.sites, a.jx, a.jy, a.jz);
  else if (a.kind == "heisenberg-2d") h = heisenberg_2d(a.rows, a.cols, a.jx, a.jy, a.jz);
  else if (a.kind == "tj-1d") h = tj_1d(a.sites, a.t, a.j);
  else throw BadInput("unknown model kind '" + a.kind + "'");
  write_text(a.out, render_hamiltonian(h));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f2c: fermionic-aware Trotter compiler with a learned free-fermion planner"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile_cmd = app.add_subcommand("compile", "Compile exp(-iHt) to an OpenQASM 3 circuit");
  compile_cmd->add_option("--hamiltonian", ca.hamiltonian, "Hamiltonian JSON file")->required();
  compile_cmd->add_option("--time", ca.time, "Evolution time t")->required();
  compile_cmd->add_option("--steps", ca.steps, "Trotter steps N")->required()->check(
      CLI::PositiveNumber);
  compile_cmd->add_option("--epsilon", ca.epsilon, "Free-block fidelity tolerance")
      ->capture_default_str();
  compile_cmd->add_option("--model", ca.model, "Value network weights (default: heuristic search)");
  compile_cmd->add_option("--beam", ca.beam, "Beam width for the learned planner")
      ->capture_default_str()->check(CLI::PositiveNumber);
  compile_cmd->add_option("--h-max", ca.h_max, "Search horizon")->capture_default_str()->check(
      CLI::PositiveNumber);
  compile_cmd->add_flag("--fallback-only", ca.fallback_only, "Skip the search, use Givens QR");
  compile_cmd->add_flag("--no-fallback", ca.no_fallback,
                        "Report a search failure (exit 2) instead of falling back");
  compile_cmd->add_flag("--oracle-check", ca.oracle_check,
                        "Add dense oracle_fidelity against exp(-iHt) to the metrics (n <= 10)");
  compile_cmd->add_option("--out", ca.out, "Output QASM path")->required();
  compile_cmd->add_option("--metrics", ca.metrics, "Output metrics JSON path")->required();

  GenArgs ga;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate reversal episodes as JSON Lines");
  gen_cmd->add_option("--n-qubits", ga.n, "Qubits per episode")->required();
  gen_cmd->add_option("--episodes", ga.episodes, "Episode count")->required();
  gen_cmd->add_option("--min-len", ga.min_len, "Shortest episode")->capture_default_str();
  gen_cmd->add_option("--max-len", ga.max_len, "Longest episode (at most 100)")
      ->capture_default_str();
  auto* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "RNG seed (default: F2C_SEED or 0)");
  gen_cmd->add_option("--jobs", ga.jobs, "Worker threads (default: machine parallelism)");
  gen_cmd->add_option("--out", ga.out, "Output JSONL path")->required();

  TrainArgs ta;
  std::uint64_t train_seed = 0;
  auto* train_cmd = app.add_subcommand("train", "Train the value network (MC then TD)");
  train_cmd->add_option("--data", ta.data, "Episode JSONL from gen-data")->required();
  train_cmd->add_option("--epochs", ta.epochs, "Monte Carlo epochs")->capture_default_str();
  train_cmd->add_option("--td-epochs", ta.td_epochs, "TD refinement epochs")
      ->capture_default_str();
  train_cmd->add_option("--huber-delta", ta.huber_delta, "Huber threshold")
      ->capture_default_str();
  train_cmd->add_flag("--no-geometric-reg", ta.no_geometric_reg,
                      "Drop the (V - alpha - beta phi)^2 term");
  train_cmd->add_option("--lr", ta.lr, "Learning rate")->capture_default_str();
  train_cmd->add_option("--momentum", ta.momentum, "SGD momentum")->capture_default_str();
  train_cmd->add_option("--batch-size", ta.batch_size, "Minibatch size")->capture_default_str();
  train_cmd->add_option("--hidden", ta.hidden, "Hidden layer widths")->capture_default_str()
      ->delimiter(',');
  train_cmd->add_option("--activation", ta.activation, "relu or tanh")->capture_default_str()
      ->check(CLI::IsMember({"relu", "tanh"}));
  train_cmd->add_option("--history", ta.history, "Actions in the feature window")
      ->capture_default_str();
  train_cmd->add_option("--h-max", ta.h_max, "Horizon used to scale t")->capture_default_str();
  train_cmd->add_option("--epsilon", ta.epsilon, "Terminal tolerance for TD targets")
      ->capture_default_str();
  auto* train_seed_opt =
      train_cmd->add_option("--seed", train_seed, "RNG seed (default: F2C_SEED or 0)");
  train_cmd->add_option("--out", ta.out, "Output weights JSON; the loss trace goes to <out>.loss.csv")
      ->required();

  EvalArgs ea;
  std::uint64_t eval_seed = 0;
  auto* eval_cmd = app.add_subcommand("eval", "Compile random free-fermion targets and report");
  eval_cmd->add_option("--model", ea.model, "Value network weights (default: heuristic search)");
  eval_cmd->add_option("--n-qubits", ea.n, "Qubits per target")->required();
  eval_cmd->add_option("--targets", ea.targets, "Target count")->capture_default_str();
  eval_cmd->add_option("--dt", ea.dt, "dt is drawn uniformly from (-dt, dt)")
      ->capture_default_str();
  eval_cmd->add_option("--epsilon", ea.epsilon, "Fidelity tolerance")->capture_default_str();
  eval_cmd->add_option("--beam", ea.beam, "Beam width")->capture_default_str()->check(
      CLI::PositiveNumber);
  eval_cmd->add_option("--h-max", ea.h_max, "Search horizon")->capture_default_str()->check(
      CLI::PositiveNumber);
  eval_cmd->add_flag("--fallback-only", ea.fallback_only, "Skip the search, use Givens QR");
  eval_cmd->add_flag("--no-fallback", ea.no_fallback, "Count search failures as failures");
  auto* eval_seed_opt = eval_cmd->add_option("--seed", eval_seed, "RNG seed (default: F2C_SEED or 0)");
  eval_cmd->add_option("--jobs", ea.jobs, "Worker threads (default: machine parallelism)");
  eval_cmd->add_option("--report", ea.report, "Output report JSON")->required();

  BoundArgs ba;
  auto* bound_cmd = app.add_subcommand("bound", "Print the first-order Trotter error bound");
  bound_cmd->add_option("--hamiltonian", ba.hamiltonian, "Hamiltonian JSON file")->required();
  bound_cmd->add_option("--time", ba.time, "Evolution time t")->required();
  bound_cmd->add_option("--steps", ba.steps, "Trotter steps N")->required()->check(
      CLI::PositiveNumber);

  ModelArgs ma;
  auto* model_cmd = app.add_subcommand("model", "Write a benchmark Hamiltonian as JSON");
  model_cmd->add_option("--kind", ma.kind, "fermi-hubbard-1d, heisenberg-1d, heisenberg-2d, tj-1d")
      ->required()
      ->check(CLI::IsMember({"fermi-hubbard-1d", "heisenberg-1d", "heisenberg-2d", "tj-1d"}));
  model_cmd->add_option("--sites", ma.sites, "Chain length")->capture_default_str();
  model_cmd->add_option("--rows", ma.rows, "Lattice rows (heisenberg-2d)")->capture_default_str();
  model_cmd->add_option("--cols", ma.cols, "Lattice columns (heisenberg-2d)")
      ->capture_default_str();
  model_cmd->add_option("--t", ma.t, "Hopping amplitude")->capture_default_str();
  model_cmd->add_option("--u", ma.u, "On-site interaction (fermi-hubbard-1d)")
      ->capture_default_str();
  model_cmd->add_option("--j", ma.j, "Exchange coupling (tj-1d)")->capture_default_str();
  model_cmd->add_option("--jx", ma.jx, "XX coupling (heisenberg)")->capture_default_str();
  model_cmd->add_option("--jy", ma.jy, "YY coupling (heisenberg)")->capture_default_str();
  model_cmd->add_option("--jz", ma.jz, "ZZ coupling (heisenberg)")->capture_default_str();
  model_cmd->add_option("--out", ma.out, "Output Hamiltonian JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (gen_seed_opt->count()) ga.seed = gen_seed;
    if (train_seed_opt->count()) ta.seed = train_seed;
    if (eval_seed_opt->count()) ea.seed = eval_seed;
    if (*compile_cmd) return run_compile(ca);
    if (*gen_cmd) return run_gen_data(ga);
    if (*train_cmd) return run_train(ta);
    if (*eval_cmd) return run_eval(ea);
    if (*bound_cmd) return run_bound(ba);
    if (*model_cmd) return run_model(ma);
  } catch (const std::exception& e) {
    std::cerr << "f2c: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

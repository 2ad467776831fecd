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

#include "f2c/trajectory.hpp"

#include <cmath>
#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "f2c/env.hpp"

namespace f2c {

using json = nlohmann::json;

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t index) {
  return mix_seed(mix_seed(seed) ^ index);
}

Episode sample_episode(std::size_t n, LengthRange lengths, std::uint64_t seed) {
  if (lengths.min < 1 || lengths.max < lengths.min) {
    throw std::invalid_argument("episode lengths need 1 <= min <= max");
  }
  const auto alpha = alphabet(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(lengths.min, lengths.max);
  std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
  Episode e{n, {}, seed};
  const int len = length(rng);
  e.actions.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) e.actions.push_back(alpha[pick(rng)]);
  return e;
}

std::vector<Episode> generate_episodes(std::size_t n, std::size_t count, LengthRange lengths,
                                       std::uint64_t seed, std::size_t jobs) {
  std::vector<Episode> out(count);
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  auto work = [&](std::size_t worker) {
    for (std::size_t i = worker; i < count; i += jobs) {
      out[i] = sample_episode(n, lengths, episode_seed(seed, i));
    }
  };
  if (jobs == 1) {
    work(0);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w);
  for (auto& th : pool) th.join();
  return out;
}

FFState episode_target(const Episode& e) {
  FFState s = FFState::identity(e.n);
  for (const auto& a : e.actions) s.apply(a);
  return s;
}

FreeTarget random_free_target(std::size_t n, double dt_max, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("a target needs at least one qubit");
  if (!(dt_max > 0.0) || !std::isfinite(dt_max)) throw std::invalid_argument("dt must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> step(-dt_max, dt_max);

  // gamma_m = Z_0 ... Z_{q-1} (X or Y)_q; the product of two is a Pauli string
  // up to phase, and classify() recovers the pair.
  auto majorana = [n](std::size_t m) {
    PauliString p(n);
    for (std::size_t q = 0; q < m / 2; ++q) p.set(q, 'Z');
    p.set(m / 2, m % 2 == 0 ? 'X' : 'Y');
    return p;
  };
  FreeTarget out{{}, 0.0, FFState::identity(n)};
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = a + 1; b < 2 * n; ++b) {
      out.terms.push_back({multiply(majorana(a), majorana(b)).product, coeff(rng)});
    }
  }
  out.dt = step(rng);
  out.state = assemble_generator(out.terms, n, out.dt);
  return out;
}

std::vector<Frame> frames(const Episode& e, double epsilon) {
  const std::size_t len = e.actions.size();
  for (const auto& a : e.actions) require_valid(a, e.n);
  // S_L = I and S_t = G_{t+1}^T S_{t+1}.
  std::vector<FFState> states(len + 1, FFState::identity(e.n));
  for (std::size_t t = len; t-- > 0;) {
    states[t] = states[t + 1];
    states[t].apply(e.actions[t].inverse());
  }
  std::vector<Frame> out;
  out.reserve(len);
  for (std::size_t t = 0; t < len; ++t) {
    const bool terminal = t + 1 == len || is_terminal(states[t + 1], epsilon);
    out.push_back(Frame{t, e.actions[t], states[t], states[t + 1], -1.0,
                        -static_cast<double>(len - t), terminal});
  }
  return out;
}

namespace {

json action_json(const Action& a) {
  json j = json::object();
  j["kind"] = std::string(kind_name(a.kind));
  j["site"] = a.site;
  j["sign"] = a.sign;
  j["k"] = a.k;
  return j;
}

Action action_from_json(const json& j, std::size_t n) {
  if (!j.is_object()) throw std::invalid_argument("action must be an object");
  Action a{parse_kind(j.at("kind").get<std::string>()), j.at("site").get<int>(),
           j.at("sign").get<int>(), j.at("k").get<int>()};
  require_valid(a, n);
  return a;
}

}  // namespace

void write_dataset(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  nlohmann::ordered_json header;
  header["format"] = "f2-episodes";
  header["version"] = kDatasetVersion;
  header["n_qubits"] = d.n;
  header["seed"] = d.seed;
  out << header.dump() << '\n';
  for (const auto& e : d.episodes) {
    if (e.n != d.n) throw std::invalid_argument("episode qubit count differs from dataset");
    json actions = json::array();
    for (const auto& a : e.actions) actions.push_back(action_json(a));
    out << json{{"actions", std::move(actions)}}.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  auto fail = [&](std::size_t line, const std::string& what) -> std::runtime_error {
    return std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
  };

  Dataset d;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw fail(line_no, std::string("malformed JSON (") + e.what() + ")");
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != "f2-episodes") throw fail(line_no, "not an f2-episodes file");
        const int version = j.at("version").get<int>();
        if (version != kDatasetVersion) {
          throw fail(line_no, "unsupported dataset version " + std::to_string(version));
        }
        d.n = j.at("n_qubits").get<std::size_t>();
        d.seed = j.at("seed").get<std::uint64_t>();
        if (d.n < 2) throw fail(line_no, "datasets need at least 2 qubits");
        have_header = true;
        continue;
      }
      Episode e{d.n, {}, episode_seed(d.seed, d.episodes.size())};
      for (const auto& a : j.at("actions")) e.actions.push_back(action_from_json(a, d.n));
      d.episodes.push_back(std::move(e));
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      throw fail(line_no, e.what());
    }
  }
  if (!have_header) throw std::runtime_error(path + ": empty dataset (no header line)");
  return d;
}

}  // namespace f2c

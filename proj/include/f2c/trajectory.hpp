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

// Reversal-generated training data. An episode is a random action list
// A_1..A_L; its target is their product, so replaying the list from the
// target's residual lands exactly on the identity.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "f2c/action.hpp"
#include "f2c/ffsim.hpp"

namespace f2c {

struct Episode {
  std::size_t n = 2;
  std::vector<Action> actions;
  std::uint64_t seed = 0;

  friend bool operator==(const Episode&, const Episode&) = default;
};

struct LengthRange {
  int min = 1;
  int max = 64;
};

/** One transition (S_t, A_{t+1}, -1, S_{t+1}) with return-to-go label -(L - t). */
struct Frame {
  std::size_t t = 0;
  Action action;
  FFState state;
  FFState next_state;
  double reward = -1.0;
  double label = 0.0;
  bool next_terminal = false;  // S_{t+1} passes the fidelity test
};

/** splitmix64 finalizer; used to derive per-episode seeds. */
std::uint64_t mix_seed(std::uint64_t x);

/** Seed of episode `index` in a dataset generated with `seed`. */
std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t index);

/** Draws L uniformly from `lengths` and L actions uniformly from alphabet(n). */
Episode sample_episode(std::size_t n, LengthRange lengths, std::uint64_t seed);

/**
 * Episodes 0..count-1 of the dataset with the given seed. The output does not
 * depend on `jobs`.
 */
std::vector<Episode> generate_episodes(std::size_t n, std::size_t count, LengthRange lengths,
                                       std::uint64_t seed, std::size_t jobs = 1);

/** G_L ... G_1 for the episode's actions. */
FFState episode_target(const Episode& e);

/**
 * Frames in order t = 0..L-1, built backwards from the identity with one
 * inverse rotation per step. `epsilon` sets next_terminal.
 */
std::vector<Frame> frames(const Episode& e, double epsilon = 1e-6);

/** exp(h dt) for a random quadratic Hamiltonian and a random step. */
struct FreeTarget {
  std::vector<PauliTerm> terms;  // one term per Majorana pair a < b
  double dt = 0.0;
  FFState state;
};

/**
 * Coefficients uniform in (-1, 1) on all n(2n-1) Majorana pairs and dt
 * uniform in (-dt_max, dt_max).
 */
FreeTarget random_free_target(std::size_t n, double dt_max, std::uint64_t seed);

struct Dataset {
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::vector<Episode> episodes;
};

inline constexpr int kDatasetVersion = 1;

/** JSON Lines: a header line then one {"actions": [...]} line per episode. */
void write_dataset(const Dataset& d, const std::string& path);

/**
 * Throws std::runtime_error naming the offending line for version mismatch,
 * malformed JSON or an invalid action.
 */
Dataset read_dataset(const std::string& path);

}  // namespace f2c

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

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "f2c/pauli.hpp"

namespace f2c {

/** Generator family of an action; the declaration order is the alphabet order. */
enum class Kind { XX, YY, XY, YX, Z };

inline constexpr std::array<Kind, 5> kAllKinds = {Kind::XX, Kind::YY, Kind::XY, Kind::YX, Kind::Z};
inline constexpr int kMinAngleExponent = 1;
inline constexpr int kMaxAngleExponent = 20;

std::string_view kind_name(Kind k);
Kind parse_kind(std::string_view name);

/** Number of qubits the generator touches. */
inline int kind_weight(Kind k) { return k == Kind::Z ? 1 : 2; }

/**
 * exp(-i angle/2 P) with P the kind's Pauli string at `site` (and site+1 for
 * two-qubit kinds) and angle = sign * pi / 2^k.
 */
struct Action {
  Kind kind = Kind::Z;
  int site = 0;
  int sign = 1;
  int k = 1;

  double angle() const;
  Action inverse() const { return {kind, site, -sign, k}; }

  friend bool operator==(const Action&, const Action&) = default;
};

bool is_valid(const Action& a, std::size_t n);
void require_valid(const Action& a, std::size_t n);

/** The generator string of the action on n qubits. */
PauliString generator_string(Kind kind, int site, std::size_t n);

/** Number of (kind, site) generators on n qubits: 4(n-1) + n. */
std::size_t generator_count(std::size_t n);

/** Position of (kind, site) in generator order. */
std::size_t generator_index(Kind kind, int site, std::size_t n);

/** Full action alphabet, ordered by (kind, site, sign, k) with sign -1 first. */
std::vector<Action> alphabet(std::size_t n);

std::size_t alphabet_size(std::size_t n);
std::size_t alphabet_index(const Action& a, std::size_t n);

std::string to_string(const Action& a);

}  // namespace f2c

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

#include "f2c/action.hpp"

#include <cmath>
#include <stdexcept>

namespace f2c {

namespace {

constexpr std::size_t kAnglesPerGenerator = 2 * (kMaxAngleExponent - kMinAngleExponent + 1);

std::size_t sites_for(Kind k, std::size_t n) { return k == Kind::Z ? n : n - 1; }

}  // namespace

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::XX: return "XX";
    case Kind::YY: return "YY";
    case Kind::XY: return "XY";
    case Kind::YX: return "YX";
    case Kind::Z: return "Z";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : kAllKinds) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown action kind '" + std::string(name) + "'");
}

double Action::angle() const { return sign * std::numbers::pi / std::ldexp(1.0, k); }

bool is_valid(const Action& a, std::size_t n) {
  if (n < 1 || a.site < 0) return false;
  if (a.sign != 1 && a.sign != -1) return false;
  if (a.k < kMinAngleExponent || a.k > kMaxAngleExponent) return false;
  if (a.kind == Kind::Z) return static_cast<std::size_t>(a.site) < n;
  return n >= 2 && static_cast<std::size_t>(a.site) + 1 < n;
}

void require_valid(const Action& a, std::size_t n) {
  if (!is_valid(a, n)) {
    throw std::invalid_argument("invalid action " + to_string(a) + " on " + std::to_string(n) +
                                " qubits");
  }
}

PauliString generator_string(Kind kind, int site, std::size_t n) {
  PauliString p(n);
  const auto q = static_cast<std::size_t>(site);
  switch (kind) {
    case Kind::XX: p.set(q, 'X'); p.set(q + 1, 'X'); break;
    case Kind::YY: p.set(q, 'Y'); p.set(q + 1, 'Y'); break;
    case Kind::XY: p.set(q, 'X'); p.set(q + 1, 'Y'); break;
    case Kind::YX: p.set(q, 'Y'); p.set(q + 1, 'X'); break;
    case Kind::Z: p.set(q, 'Z'); break;
  }
  return p;
}

std::size_t generator_count(std::size_t n) { return n == 0 ? 0 : 4 * (n - 1) + n; }

std::size_t generator_index(Kind kind, int site, std::size_t n) {
  std::size_t offset = 0;
  for (Kind k : kAllKinds) {
    if (k == kind) return offset + static_cast<std::size_t>(site);
    offset += sites_for(k, n);
  }
  return offset;
}

std::vector<Action> alphabet(std::size_t n) {
  if (n < 2) throw std::invalid_argument("the action alphabet needs at least 2 qubits");
  std::vector<Action> out;
  out.reserve(alphabet_size(n));
  for (Kind kind : kAllKinds) {
    for (std::size_t site = 0; site < sites_for(kind, n); ++site) {
      for (int sign : {-1, 1}) {
        for (int k = kMinAngleExponent; k <= kMaxAngleExponent; ++k) {
          out.push_back({kind, static_cast<int>(site), sign, k});
        }
      }
    }
  }
  return out;
}

std::size_t alphabet_size(std::size_t n) { return kAnglesPerGenerator * generator_count(n); }

std::size_t alphabet_index(const Action& a, std::size_t n) {
  const std::size_t per_sign = kMaxAngleExponent - kMinAngleExponent + 1;
  return generator_index(a.kind, a.site, n) * kAnglesPerGenerator +
         (a.sign > 0 ? per_sign : 0) + static_cast<std::size_t>(a.k - kMinAngleExponent);
}

std::string to_string(const Action& a) {
  return std::string(kind_name(a.kind)) + "_" + std::to_string(a.site) + "(" +
         (a.sign > 0 ? "+" : "-") + "pi/2^" + std::to_string(a.k) + ")";
}

}  // namespace f2c

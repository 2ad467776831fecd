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

#include "f2c/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace f2c {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroAngle = 1e-12;

void check_qubit(int q, std::size_t n) {
  if (q < 0 || static_cast<std::size_t>(q) >= n) {
    throw std::invalid_argument("gate qubit " + std::to_string(q) + " outside register of " +
                                std::to_string(n));
  }
}

bool is_trivial_rz(double theta) {
  const double r = std::remainder(theta, kTwoPi);
  return std::abs(r) <= kZeroAngle;
}

// Result of fusing two adjacent gates on one wire: nothing, or one gate.
// std::nullopt from the outer optional means "no rule applies".
std::optional<std::optional<Gate>> fuse(const Gate& first, const Gate& second) {
  if (first.q0 != second.q0) return std::nullopt;
  using K = GateKind;
  if (first.kind == K::RZ && second.kind == K::RZ) {
    const double sum = first.angle + second.angle;
    if (is_trivial_rz(sum)) return std::optional<Gate>{};
    return std::optional<Gate>{Gate::rz(first.q0, sum)};
  }
  const bool cancels = (first.kind == K::H && second.kind == K::H) ||
                       (first.kind == K::X && second.kind == K::X) ||
                       (first.kind == K::S && second.kind == K::SDG) ||
                       (first.kind == K::SDG && second.kind == K::S);
  if (cancels) return std::optional<Gate>{};
  return std::nullopt;
}

// One left-to-right pass with a stack of live gate indices per wire. A
// cancellation exposes the previous gate on the wire to the next incoming one,
// so chains such as H CX CX H collapse in a single sweep.
bool peephole_pass(Circuit& c) {
  std::vector<std::optional<Gate>> out;
  out.reserve(c.gates.size());
  std::vector<std::vector<std::size_t>> wire(c.n_qubits);
  bool changed = false;

  auto top = [&](int q) -> std::optional<std::size_t> {
    const auto& w = wire[static_cast<std::size_t>(q)];
    if (w.empty()) return std::nullopt;
    return w.back();
  };

  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::RZ && is_trivial_rz(g.angle)) {
      changed = true;
      continue;
    }
    if (g.is_two_qubit()) {
      const auto a = top(g.q0);
      const auto b = top(g.q1);
      if (a && b && *a == *b && *out[*a] == g) {
        out[*a].reset();
        wire[static_cast<std::size_t>(g.q0)].pop_back();
        wire[static_cast<std::size_t>(g.q1)].pop_back();
        changed = true;
        continue;
      }
      out.push_back(g);
      wire[static_cast<std::size_t>(g.q0)].push_back(out.size() - 1);
      wire[static_cast<std::size_t>(g.q1)].push_back(out.size() - 1);
      continue;
    }
    const auto a = top(g.q0);
    if (a && !out[*a]->is_two_qubit()) {
      if (auto fused = fuse(*out[*a], g)) {
        changed = true;
        if (*fused) {
          out[*a] = **fused;
        } else {
          out[*a].reset();
          wire[static_cast<std::size_t>(g.q0)].pop_back();
        }
        continue;
      }
    }
    out.push_back(g);
    wire[static_cast<std::size_t>(g.q0)].push_back(out.size() - 1);
  }

  c.gates.clear();
  for (auto& g : out) {
    if (g) c.gates.push_back(*g);
  }
  return changed;
}

}  // namespace

std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::CX: return "cx";
    case GateKind::RZ: return "rz";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::X: return "x";
  }
  return "?";
}

double reduce_rz_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation angle must be finite");
  // RZ has period 4 pi, so this reduction is exact, not just up to phase.
  double r = std::remainder(theta, 2.0 * kTwoPi);
  if (r <= -kTwoPi) r += 2.0 * kTwoPi;
  return r;
}

Gate Gate::rz(int q, double theta) { return {GateKind::RZ, q, -1, reduce_rz_angle(theta)}; }

void Circuit::push(const Gate& g) {
  check_qubit(g.q0, n_qubits);
  if (g.is_two_qubit()) {
    check_qubit(g.q1, n_qubits);
    if (g.q0 == g.q1) throw std::invalid_argument("cx control and target coincide");
  }
  gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits > n_qubits) throw std::invalid_argument("appended circuit is wider");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

Circuit lower_action(const Action& a, std::size_t n) {
  require_valid(a, n);
  Circuit c{n, {}};
  const int p = a.site;
  const int q = a.site + 1;
  const double theta = a.angle();
  switch (a.kind) {
    case Kind::Z:
      c.push(Gate::rz(p, theta));
      break;
    case Kind::XX:
      c.gates = {Gate::h(p), Gate::h(q), Gate::cx(p, q), Gate::rz(q, theta),
                 Gate::cx(p, q), Gate::h(p), Gate::h(q)};
      break;
    // CX (H RZ H)_p CX = exp(-i theta/2 X_p X_q); S conjugation turns an X into a Y.
    case Kind::XY:
      c.gates = {Gate::sdg(q), Gate::cx(p, q), Gate::h(p), Gate::rz(p, theta),
                 Gate::h(p),   Gate::cx(p, q), Gate::s(q)};
      break;
    case Kind::YX:
      c.gates = {Gate::sdg(p), Gate::cx(p, q), Gate::h(p), Gate::rz(p, theta),
                 Gate::h(p),   Gate::cx(p, q), Gate::s(p)};
      break;
    case Kind::YY:
      c.gates = {Gate::sdg(p), Gate::sdg(q), Gate::cx(p, q), Gate::h(p), Gate::rz(p, theta),
                 Gate::h(p),   Gate::cx(p, q), Gate::s(p),   Gate::s(q)};
      break;
  }
  return c;
}

Circuit lower_actions(const std::vector<Action>& actions, std::size_t n) {
  Circuit c{n, {}};
  for (const auto& a : actions) c.append(lower_action(a, n));
  return c;
}

Circuit lower_pauli_exponential(const PauliTerm& t, double dt) {
  const std::size_t n = t.string.size();
  std::vector<int> active;
  for (std::size_t q = 0; q < n; ++q) {
    if (t.string.letter(q) != 'I') active.push_back(static_cast<int>(q));
  }
  if (active.empty()) throw std::invalid_argument("cannot lower the identity string");

  Circuit c{n, {}};
  for (int q : active) {
    const char l = t.string.letter(static_cast<std::size_t>(q));
    if (l == 'X') c.push(Gate::h(q));
    if (l == 'Y') {
      c.push(Gate::sdg(q));
      c.push(Gate::h(q));
    }
  }
  for (std::size_t i = 0; i + 1 < active.size(); ++i) c.push(Gate::cx(active[i], active[i + 1]));
  c.push(Gate::rz(active.back(), 2.0 * t.coeff * dt));
  for (std::size_t i = active.size() - 1; i > 0; --i) c.push(Gate::cx(active[i - 1], active[i]));
  for (int q : active) {
    const char l = t.string.letter(static_cast<std::size_t>(q));
    if (l == 'X') c.push(Gate::h(q));
    if (l == 'Y') {
      c.push(Gate::h(q));
      c.push(Gate::s(q));
    }
  }
  return c;
}

Circuit peephole(const Circuit& c) {
  Circuit out = c;
  while (peephole_pass(out)) {
  }
  return out;
}

std::size_t depth(const Circuit& c) {
  std::vector<std::size_t> level(c.n_qubits, 0);
  std::size_t d = 0;
  for (const auto& g : c.gates) {
    auto& l0 = level[static_cast<std::size_t>(g.q0)];
    std::size_t layer = l0 + 1;
    if (g.is_two_qubit()) {
      auto& l1 = level[static_cast<std::size_t>(g.q1)];
      layer = std::max(layer, l1 + 1);
      l1 = layer;
    }
    l0 = layer;
    d = std::max(d, layer);
  }
  return d;
}

std::size_t gate_count(const Circuit& c) { return c.gates.size(); }

std::size_t two_qubit_count(const Circuit& c) {
  return static_cast<std::size_t>(
      std::count_if(c.gates.begin(), c.gates.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

std::string emit_qasm(const Circuit& c) {
  std::string out = "OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[" +
                    std::to_string(c.n_qubits) + "] q;\n";
  char buf[64];
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::CX:
        std::snprintf(buf, sizeof buf, "cx q[%d], q[%d];\n", g.q0, g.q1);
        break;
      case GateKind::RZ:
        std::snprintf(buf, sizeof buf, "rz(%.15g) q[%d];\n", g.angle, g.q0);
        break;
      default:
        std::snprintf(buf, sizeof buf, "%s q[%d];\n", std::string(gate_name(g.kind)).c_str(),
                      g.q0);
        break;
    }
    out += buf;
  }
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void qasm_error(std::size_t line, const std::string& what) {
  throw std::invalid_argument("qasm line " + std::to_string(line) + ": " + what);
}

int parse_qubit_ref(const std::string& s, std::size_t line) {
  int q = -1;
  char tail = 0;
  if (std::sscanf(s.c_str(), " q[%d]%c", &q, &tail) < 1 || (tail != 0 && tail != ' ')) {
    qasm_error(line, "bad qubit reference '" + s + "'");
  }
  return q;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  Circuit c;
  bool have_version = false;
  bool have_register = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (const auto pos = line.find("//"); pos != std::string::npos) line = trim(line.substr(0, pos));
    if (line.empty()) continue;
    if (line.back() != ';') qasm_error(line_no, "missing ';'");
    line = trim(line.substr(0, line.size() - 1));

    if (!have_version) {
      if (line != "OPENQASM 3" && line != "OPENQASM 3.0") qasm_error(line_no, "expected OPENQASM 3");
      have_version = true;
      continue;
    }
    if (line.rfind("include", 0) == 0) continue;
    if (line.rfind("qubit[", 0) == 0) {
      unsigned long n = 0;
      char name[8] = {0};
      if (std::sscanf(line.c_str(), "qubit[%lu] %7s", &n, name) != 2 || std::string(name) != "q") {
        qasm_error(line_no, "expected 'qubit[n] q'");
      }
      if (have_register) qasm_error(line_no, "second qubit register");
      c.n_qubits = n;
      have_register = true;
      continue;
    }
    if (!have_register) qasm_error(line_no, "gate before qubit declaration");

    const auto space = line.find_first_of(" (");
    if (space == std::string::npos) qasm_error(line_no, "malformed gate '" + line + "'");
    const std::string name = line.substr(0, space);
    std::string rest = line.substr(space);
    try {
      if (name == "rz") {
        const auto close = rest.find(')');
        if (rest[0] != '(' || close == std::string::npos) qasm_error(line_no, "rz needs an angle");
        std::size_t used = 0;
        const std::string angle_text = trim(rest.substr(1, close - 1));
        const double theta = std::stod(angle_text, &used);
        if (used != angle_text.size()) qasm_error(line_no, "bad angle '" + angle_text + "'");
        c.push(Gate::rz(parse_qubit_ref(trim(rest.substr(close + 1)), line_no), theta));
      } else if (name == "cx") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos) qasm_error(line_no, "cx needs two qubits");
        c.push(Gate::cx(parse_qubit_ref(trim(rest.substr(0, comma)), line_no),
                        parse_qubit_ref(trim(rest.substr(comma + 1)), line_no)));
      } else {
        const int q = parse_qubit_ref(trim(rest), line_no);
        if (name == "h") c.push(Gate::h(q));
        else if (name == "s") c.push(Gate::s(q));
        else if (name == "sdg") c.push(Gate::sdg(q));
        else if (name == "x") c.push(Gate::x(q));
        else qasm_error(line_no, "unsupported gate '" + name + "'");
      }
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.rfind("qasm line", 0) == 0) throw;
      qasm_error(line_no, msg);
    } catch (const std::out_of_range&) {
      qasm_error(line_no, "angle out of range");
    }
  }
  if (!have_register) throw std::invalid_argument("qasm: no qubit register declared");
  return c;
}

}  // namespace f2c

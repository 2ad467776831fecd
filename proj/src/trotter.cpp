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

#include "f2c/trotter.hpp"

#include <cmath>
#include <stdexcept>

#include "f2c/ffsim.hpp"

namespace f2c {

TermSplit split(const Hamiltonian& h) {
  TermSplit out;
  for (const auto& t : h.terms()) {
    (is_free_fermionic(t) ? out.free : out.residual).push_back(t);
  }
  return out;
}

double trotter_bound(const Hamiltonian& h, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("trotter steps must be at least 1");
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  const auto& terms = h.terms();
  double sum = 0.0;
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) sum += commutator_norm(terms[a], terms[b]);
  }
  // (t^2 / 2N) sum, evaluated as dt * t * sum / 2 with dt = t / N.
  const double dt = t / steps;
  return 0.5 * dt * t * sum;
}

CompileReport compile(const CompileJob& job) {
  if (job.steps < 1) throw std::invalid_argument("trotter steps must be at least 1");
  if (!std::isfinite(job.time)) throw std::invalid_argument("evolution time must be finite");
  job.search.validate();
  const Hamiltonian& h = job.hamiltonian;
  const std::size_t n = h.n_qubits();
  if (n == 0) throw std::invalid_argument("hamiltonian has no qubits");
  if (job.model && job.model->spec && job.model->spec->n != n) {
    throw std::invalid_argument("model was trained for " + std::to_string(job.model->spec->n) +
                                " qubits, hamiltonian has " + std::to_string(n));
  }

  const double dt = job.time / job.steps;
  const TermSplit parts = split(h);

  CompileReport report;
  report.trotter_bound = trotter_bound(h, job.time, job.steps);
  report.method = "none";

  Circuit step{n, {}};
  StepMetrics metrics;
  if (!parts.free.empty()) {
    const FFState target = assemble_generator(parts.free, n, dt);
    const PlanResult plan =
        compile_free_part(target, job.model ? &*job.model : nullptr, job.search);
    report.success = plan.success;
    report.method = std::string(method_name(plan.method));
    metrics.free_actions = plan.actions.size();
    metrics.free_fidelity = plan.final_fidelity;
    metrics.method = plan.method;
    step.append(lower_actions(plan.actions, n));
    report.free_fidelity_est = std::pow(plan.final_fidelity, job.steps);
  }
  for (const auto& t : parts.residual) {
    if (t.string.is_identity()) continue;  // global phase
    step.append(lower_pauli_exponential(t, dt));
  }

  const Circuit step_opt = peephole(step);
  metrics.gates = gate_count(step_opt);
  metrics.depth = depth(step_opt);
  metrics.two_qubit = two_qubit_count(step_opt);

  Circuit whole{n, {}};
  whole.gates.reserve(step.gates.size() * static_cast<std::size_t>(job.steps));
  for (int i = 0; i < job.steps; ++i) {
    whole.append(step);
    report.per_step.push_back(metrics);
  }
  report.circuit = peephole(whole);
  return report;
}

}  // namespace f2c

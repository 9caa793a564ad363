// Copyright 2026 The vqepes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqepes/adapt.hpp"

#include <cmath>

#include <fmt/format.h>

namespace vqepes {

void AdaptConfig::validate() const {
  if (!(grad_threshold > 0.0) || !(energy_threshold > 0.0)) throw Error("ADAPT thresholds must be positive");
  inner.validate();
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::gradient: return "gradient";
    case StopReason::energy: return "energy";
    case StopReason::iteration_cap: return "iteration-cap";
  }
  return "?";
}

std::vector<double> pool_gradients(const StateVector& state, const CompiledOperator& h, const OperatorPool& pool) {
  if (pool.ops.empty()) throw Error("operator pool is empty");
  StateVector h_psi(state.n_qubits());
  h.apply(state, h_psi);
  std::vector<double> g;
  g.reserve(pool.size());
  StateVector p_psi;
  for (const auto& p : pool.ops) {
    if (p.n_qubits() != state.n_qubits()) throw Error("pool string width differs from state width");
    p_psi = state;
    apply_pauli(p_psi, p);
    g.push_back(h_psi.inner(p_psi).imag());
  }
  return g;
}

AdaptResult run_adapt(const QubitOperator& h, const OperatorPool& pool, std::uint64_t reference,
                      const AdaptConfig& config) {
  config.validate();
  if (pool.ops.empty()) throw Error("operator pool is empty");
  const CompiledOperator op(h);
  AdaptResult r;
  r.final_circuit = ParameterizedCircuit(h.n_qubits());
  {
    const StateVector ref = prepare_reference(reference, h.n_qubits());
    r.energies.push_back(expectation(ref, op));
  }
  for (;;) {
    if (r.outer_iterations >= config.max_outer_iterations) {
      r.stop_reason = StopReason::iteration_cap;
      break;
    }
    const StateVector psi = prepare_state(r.final_circuit, r.params, reference);
    const std::vector<double> g = pool_gradients(psi, op, pool);
    std::size_t best = 0;
    for (std::size_t k = 1; k < g.size(); ++k) {
      if (std::abs(g[k]) > std::abs(g[best])) best = k;
    }
    r.max_gradients.push_back(std::abs(g[best]));
    if (std::abs(g[best]) < config.grad_threshold) {
      r.stop_reason = StopReason::gradient;
      break;
    }
    r.final_circuit.add_rotation(pool.ops[best], r.final_circuit.new_param(), 1.0);
    r.params.push_back(0.0);
    r.chosen_ops.push_back(pool.ops[best]);
    r.chosen_indices.push_back(best);
    ++r.outer_iterations;

    VqeConfig inner = config.inner;
    inner.initial_params = r.params;
    VqeResult v;
    try {
      v = run_vqe(EnergyFunction(r.final_circuit, h, reference), inner);
    } catch (const Error& e) {
      throw AdaptFailure(fmt::format("inner optimization failed at outer iteration {}: {}", r.outer_iterations,
                                     e.what()),
                         r);
    }
    r.params = v.params;
    r.optimizer_iterations += v.iterations;
    r.evaluations += v.evaluations;
    r.inner_converged = r.inner_converged && v.converged;
    const double previous = r.energies.back();
    r.energies.push_back(v.energy);
    if (std::abs(v.energy - previous) < config.energy_threshold) {
      r.stop_reason = StopReason::energy;
      break;
    }
  }
  return r;
}

}  // namespace vqepes

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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqepes/ansatz.hpp"
#include "vqepes/circuit.hpp"
#include "vqepes/error.hpp"
#include "vqepes/simulator.hpp"
#include "vqepes/vqe.hpp"

namespace vqepes {

struct AdaptConfig {
  std::size_t max_outer_iterations = 4;
  double grad_threshold = 1e-4;    // Ha/rad
  double energy_threshold = 1e-3;  // Ha
  VqeConfig inner;

  void validate() const;
};

enum class StopReason { gradient, energy, iteration_cap };
std::string to_string(StopReason r);

struct AdaptResult {
  std::vector<double> energies;  // energies[0] is the reference energy
  std::vector<PauliString> chosen_ops;
  std::vector<std::size_t> chosen_indices;  // into the pool
  std::vector<double> max_gradients;        // max |g| at each screening
  ParameterizedCircuit final_circuit;
  std::vector<double> params;
  StopReason stop_reason = StopReason::iteration_cap;
  std::size_t outer_iterations = 0;      // operators appended
  std::size_t optimizer_iterations = 0;  // summed over inner runs
  std::size_t evaluations = 0;           // summed over inner runs
  bool inner_converged = true;

  double energy() const { return energies.back(); }
};

/// Raised when an inner optimization throws; carries what was done so far.
class AdaptFailure : public Error {
 public:
  AdaptFailure(const std::string& what, AdaptResult partial) : Error(what), partial_(std::move(partial)) {}
  const AdaptResult& partial() const noexcept { return partial_; }

 private:
  AdaptResult partial_;
};

/// g_k = d/dtheta <psi| e^{i theta/2 P_k} H e^{-i theta/2 P_k} |psi> at 0
///     = Im <H psi | P_k psi>.
std::vector<double> pool_gradients(const StateVector& state, const CompiledOperator& h, const OperatorPool& pool);

/// Greedy growth: append the largest-|g| string (lowest index on ties) with a
/// fresh zero parameter, re-optimize every parameter from the previous
/// optimum, stop on the gradient, energy-change or outer-cap criterion.
AdaptResult run_adapt(const QubitOperator& h, const OperatorPool& pool, std::uint64_t reference,
                      const AdaptConfig& config = {});

}  // namespace vqepes

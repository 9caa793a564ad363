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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqepes/circuit.hpp"
#include "vqepes/pauli.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes {

enum class GradientMethod { adjoint, parameter_shift, finite_difference };

std::string to_string(GradientMethod m);

struct VqeConfig {
  GradientMethod gradient = GradientMethod::adjoint;
  std::size_t max_iterations = 1000;
  double f_tol = 1e-8;
  double g_tol = 1e-6;
  std::optional<std::vector<double>> initial_params;  // zeros when empty

  void validate() const;
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> params;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::vector<double> history;
  bool converged = false;
  std::string message;
};

/// E(theta) = <ref| U(theta)+ H U(theta) |ref> on the statevector.
class EnergyFunction {
 public:
  EnergyFunction(ParameterizedCircuit circuit, const QubitOperator& hamiltonian, std::uint64_t reference);

  const ParameterizedCircuit& circuit() const noexcept { return circuit_; }
  const CompiledOperator& hamiltonian() const noexcept { return op_; }
  std::uint64_t reference() const noexcept { return reference_; }

  StateVector state(std::span<const double> params) const;
  double energy(std::span<const double> params) const;

  /// dE/dtheta. Adjoint and parameter-shift are exact; finite-difference
  /// uses a central step h. `energy_out` receives E(params) when non-null.
  std::vector<double> gradient(std::span<const double> params, GradientMethod method,
                               double* energy_out = nullptr, double h = 1e-5) const;

 private:
  std::vector<double> adjoint_gradient(std::span<const double> params, double* energy_out) const;
  std::vector<double> shift_gradient(std::span<const double> params) const;
  double shifted_energy(std::span<const double> params, std::size_t element, double offset) const;

  ParameterizedCircuit circuit_;
  CompiledOperator op_;
  std::uint64_t reference_;
};

double objective(const ParameterizedCircuit& circuit, std::span<const double> params, const QubitOperator& h,
                 std::uint64_t reference);

std::vector<double> gradient(const ParameterizedCircuit& circuit, std::span<const double> params,
                             const QubitOperator& h, std::uint64_t reference,
                             GradientMethod method = GradientMethod::parameter_shift);

VqeResult run_vqe(const EnergyFunction& f, const VqeConfig& config);
VqeResult run_vqe(const ParameterizedCircuit& circuit, const QubitOperator& h, std::uint64_t reference,
                  const VqeConfig& config = {});

}  // namespace vqepes

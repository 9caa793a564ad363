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

#include "vqepes/vqe.hpp"

#include <cmath>
#include <numbers>
#include <variant>

#include <fmt/format.h>

#include "vqepes/error.hpp"
#include "vqepes/optimizer.hpp"

namespace vqepes {

namespace {

/// Generator and angle scale of a parameterized element, as exp(-i s theta/2 G).
struct Generator {
  PauliString pauli;
  double scale;
  std::size_t param;
};

std::optional<Generator> generator_of(const CircuitElement& e, unsigned n) {
  if (const auto* r = std::get_if<PauliRotation>(&e)) return Generator{r->generator, r->scale, r->param};
  if (const auto* g = std::get_if<ParamGate>(&e)) {
    return Generator{PauliString::single(n, g->qubit, g->kind == GateKind::Ry ? 'Y' : 'Z'), 1.0, g->param};
  }
  return std::nullopt;
}

void apply_element(StateVector& s, const CircuitElement& e, std::span<const double> params, double offset,
                   bool inverse_op) {
  const double sign = inverse_op ? -1.0 : 1.0;
  if (const auto* r = std::get_if<PauliRotation>(&e)) {
    apply_pauli_rotation(s, r->generator, sign * (r->scale * params[r->param] + offset));
  } else if (const auto* g = std::get_if<ParamGate>(&e)) {
    apply_gate(s, {g->kind, g->qubit, 0, sign * (params[g->param] + offset)});
  } else {
    const Gate& gate = std::get<FixedGate>(e).gate;
    apply_gate(s, inverse_op ? inverse(gate) : gate);
  }
}

}  // namespace

std::string to_string(GradientMethod m) {
  switch (m) {
    case GradientMethod::adjoint: return "adjoint";
    case GradientMethod::parameter_shift: return "parameter-shift";
    case GradientMethod::finite_difference: return "finite-difference";
  }
  return "?";
}

void VqeConfig::validate() const {
  if (!(f_tol > 0.0) || !(g_tol > 0.0)) throw Error("VQE tolerances must be positive");
  if (max_iterations == 0) throw Error("max_iterations must be positive");
}

EnergyFunction::EnergyFunction(ParameterizedCircuit circuit, const QubitOperator& hamiltonian,
                               std::uint64_t reference)
    : circuit_(std::move(circuit)), op_(hamiltonian), reference_(reference) {
  if (hamiltonian.n_qubits() != circuit_.n_qubits()) {
    throw Error(fmt::format("Hamiltonian acts on {} qubits, circuit on {}", hamiltonian.n_qubits(),
                            circuit_.n_qubits()));
  }
  if (!op_.hermitian()) throw Error("Hamiltonian is not Hermitian");
  circuit_.validate();
}

StateVector EnergyFunction::state(std::span<const double> params) const {
  return prepare_state(circuit_, params, reference_);
}

double EnergyFunction::energy(std::span<const double> params) const { return expectation(state(params), op_); }

double EnergyFunction::shifted_energy(std::span<const double> params, std::size_t element, double offset) const {
  StateVector s = prepare_reference(reference_, circuit_.n_qubits());
  const auto& els = circuit_.elements();
  for (std::size_t i = 0; i < els.size(); ++i) apply_element(s, els[i], params, i == element ? offset : 0.0, false);
  return expectation(s, op_);
}

std::vector<double> EnergyFunction::shift_gradient(std::span<const double> params) const {
  std::vector<double> g(circuit_.n_params(), 0.0);
  const auto& els = circuit_.elements();
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < els.size(); ++i) {
    const auto gen = generator_of(els[i], circuit_.n_qubits());
    if (!gen) continue;
    const double plus = shifted_energy(params, i, half_pi);
    const double minus = shifted_energy(params, i, -half_pi);
    g[gen->param] += gen->scale * 0.5 * (plus - minus);
  }
  return g;
}

// With lambda = U_{k+1}+ ... U_L+ H psi and psi_k the state after element k,
// dE/dtheta gains s * Im <lambda | G psi_k> from each occurrence.
std::vector<double> EnergyFunction::adjoint_gradient(std::span<const double> params, double* energy_out) const {
  StateVector psi = state(params);
  StateVector lambda(circuit_.n_qubits());
  op_.apply(psi, lambda);
  if (energy_out) *energy_out = psi.inner(lambda).real();
  std::vector<double> g(circuit_.n_params(), 0.0);
  StateVector mu;
  const auto& els = circuit_.elements();
  for (std::size_t i = els.size(); i-- > 0;) {
    if (const auto gen = generator_of(els[i], circuit_.n_qubits())) {
      mu = psi;
      apply_pauli(mu, gen->pauli);
      g[gen->param] += gen->scale * lambda.inner(mu).imag();
    }
    apply_element(psi, els[i], params, 0.0, true);
    apply_element(lambda, els[i], params, 0.0, true);
  }
  return g;
}

std::vector<double> EnergyFunction::gradient(std::span<const double> params, GradientMethod method,
                                             double* energy_out, double h) const {
  if (params.size() != circuit_.n_params()) {
    throw Error(fmt::format("circuit takes {} parameters, got {}", circuit_.n_params(), params.size()));
  }
  if (method == GradientMethod::adjoint) return adjoint_gradient(params, energy_out);
  if (energy_out) *energy_out = energy(params);
  if (method == GradientMethod::parameter_shift) return shift_gradient(params);
  std::vector<double> x(params.begin(), params.end());
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + h;
    const double up = energy(x);
    x[k] = x0 - h;
    const double down = energy(x);
    x[k] = x0;
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

double objective(const ParameterizedCircuit& circuit, std::span<const double> params, const QubitOperator& h,
                 std::uint64_t reference) {
  return EnergyFunction(circuit, h, reference).energy(params);
}

std::vector<double> gradient(const ParameterizedCircuit& circuit, std::span<const double> params,
                             const QubitOperator& h, std::uint64_t reference, GradientMethod method) {
  return EnergyFunction(circuit, h, reference).gradient(params, method);
}

VqeResult run_vqe(const EnergyFunction& f, const VqeConfig& config) {
  config.validate();
  const std::size_t n = f.circuit().n_params();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (config.initial_params) {
    if (config.initial_params->size() != n) {
      throw Error(fmt::format("initial parameters have length {}, circuit takes {}", config.initial_params->size(), n));
    }
    for (std::size_t k = 0; k < n; ++k) x0[static_cast<Eigen::Index>(k)] = (*config.initial_params)[k];
  }
  ValueAndGradient fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    double e = 0.0;
    const auto g = f.gradient(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), config.gradient, &e);
    grad = Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size()));
    return e;
  };
  BfgsOptions opt;
  opt.max_iterations = config.max_iterations;
  opt.f_tol = config.f_tol;
  opt.g_tol = config.g_tol;
  const OptimizeResult r = minimize_bfgs(fn, x0, opt);
  VqeResult out;
  out.energy = r.f;
  out.params.assign(r.x.data(), r.x.data() + r.x.size());
  out.iterations = r.iterations;
  out.evaluations = r.evaluations;
  out.history = r.history;
  out.converged = r.converged;
  out.message = r.message;
  return out;
}

VqeResult run_vqe(const ParameterizedCircuit& circuit, const QubitOperator& h, std::uint64_t reference,
                  const VqeConfig& config) {
  return run_vqe(EnergyFunction(circuit, h, reference), config);
}

}  // namespace vqepes

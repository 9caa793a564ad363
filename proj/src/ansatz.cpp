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

#include "vqepes/ansatz.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "vqepes/error.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes {

namespace {

bool is_beta(int mode, int n_spatial) { return mode >= n_spatial; }

FermionOperator antisymmetrize(const std::vector<LadderOp>& ops, int n_modes) {
  FermionOperator t;
  t.n_modes = n_modes;
  t.add(ops, 1.0);
  FermionOperator g = t;
  for (auto term : t.adjoint().terms) {
    term.coeff = -term.coeff;
    g.terms.push_back(std::move(term));
  }
  return g;
}

QubitOperator mapped(const Excitation& e, int n_spin_orb) {
  QubitOperator q = jordan_wigner(e.generator);
  if (q.n_qubits() != static_cast<unsigned>(n_spin_orb)) throw Error("excitation width mismatch");
  return q;
}

}  // namespace

std::string Excitation::label() const { return fmt::format("{}->{}", fmt::join(occupied, ","), fmt::join(virtuals, ",")); }

std::vector<Excitation> uccsd_excitations(int n_elec, int n_spin_orb) {
  const std::uint64_t ref = hf_reference(n_elec, n_spin_orb);
  const int n_spatial = n_spin_orb / 2;
  std::vector<int> occ;
  std::vector<int> virt;
  for (int m = 0; m < n_spin_orb; ++m) ((ref >> m) & 1U ? occ : virt).push_back(m);

  std::vector<Excitation> out;
  for (int i : occ) {
    for (int a : virt) {
      if (is_beta(i, n_spatial) != is_beta(a, n_spatial)) continue;
      out.push_back({{i}, {a}, antisymmetrize({cre(a), ann(i)}, n_spin_orb)});
    }
  }
  for (std::size_t ii = 0; ii < occ.size(); ++ii) {
    for (std::size_t jj = ii + 1; jj < occ.size(); ++jj) {
      const int i = occ[ii];
      const int j = occ[jj];
      const int beta_in = is_beta(i, n_spatial) + is_beta(j, n_spatial);
      for (std::size_t aa = 0; aa < virt.size(); ++aa) {
        for (std::size_t bb = aa + 1; bb < virt.size(); ++bb) {
          const int a = virt[aa];
          const int b = virt[bb];
          if (is_beta(a, n_spatial) + is_beta(b, n_spatial) != beta_in) continue;
          if (beta_in == 1 && is_beta(a, n_spatial) != is_beta(i, n_spatial)) continue;
          out.push_back({{i, j}, {a, b}, antisymmetrize({cre(a), cre(b), ann(j), ann(i)}, n_spin_orb)});
        }
      }
    }
  }
  return out;
}

ParameterizedCircuit uccsd_circuit(const std::vector<Excitation>& excitations, int n_spin_orb) {
  ParameterizedCircuit c(static_cast<unsigned>(n_spin_orb));
  for (const auto& e : excitations) {
    const QubitOperator q = mapped(e, n_spin_orb);
    const std::size_t k = c.new_param();
    for (const auto& [p, coeff] : q.terms()) {
      if (std::abs(coeff.real()) > 1e-12) throw Error("excitation generator is not anti-Hermitian");
      c.add_rotation(p, k, -2.0 * coeff.imag());
    }
  }
  return c;
}

ParameterizedCircuit ryrz_circuit(unsigned n_qubits, unsigned reps, Entangler entangler) {
  ParameterizedCircuit c(n_qubits);
  auto rotation_layers = [&] {
    for (unsigned q = 0; q < n_qubits; ++q) c.add_param_gate(GateKind::Ry, q, c.new_param());
    for (unsigned q = 0; q < n_qubits; ++q) c.add_param_gate(GateKind::Rz, q, c.new_param());
  };
  for (unsigned r = 0; r < reps; ++r) {
    rotation_layers();
    if (entangler == Entangler::chain) {
      for (unsigned q = 0; q + 1 < n_qubits; ++q) c.add_gate(Gate::cnot(q, q + 1));
    } else {
      for (unsigned i = 0; i < n_qubits; ++i) {
        for (unsigned j = i + 1; j < n_qubits; ++j) c.add_gate(Gate::cnot(i, j));
      }
    }
  }
  rotation_layers();
  return c;
}

std::vector<double> ryrz_initial_params(std::size_t n_params, std::uint64_t seed, double spread) {
  CounterRng rng(seed, 0);
  std::vector<double> x(n_params);
  for (double& v : x) v = spread * (2.0 * rng.uniform() - 1.0);
  return x;
}

OperatorPool build_pool(const std::vector<Excitation>& excitations, int n_spin_orb) {
  OperatorPool pool;
  struct Hash {
    std::size_t operator()(const PauliString& p) const noexcept {
      return std::hash<std::uint64_t>{}(p.x_mask() * 0x9e3779b97f4a7c15ULL ^ p.z_mask());
    }
  };
  std::unordered_set<PauliString, Hash> seen;
  for (const auto& e : excitations) {
    const QubitOperator q = mapped(e, n_spin_orb);
    for (const auto& [p, coeff] : q.terms()) {
      (void)coeff;
      if (y_parity(p) != YParity::odd) continue;
      if (!seen.insert(p).second) continue;
      pool.ops.push_back(p);
      pool.provenance.push_back(e.label());
    }
  }
  if (pool.ops.empty()) throw Error("operator pool is empty: the active space has no excitations");
  return pool;
}

}  // namespace vqepes

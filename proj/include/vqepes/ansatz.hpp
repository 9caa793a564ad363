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

#include "vqepes/circuit.hpp"
#include "vqepes/fermion.hpp"
#include "vqepes/pauli.hpp"

namespace vqepes {

/// Anti-Hermitian generator T - T+ of one UCCSD excitation.
struct Excitation {
  std::vector<int> occupied;  // i (, j)
  std::vector<int> virtuals;  // a (, b)
  FermionOperator generator;

  /// "1->3" or "0,4->2,6" in spin-orbital indices.
  std::string label() const;
};

/// Spin-preserving singles a+_a a_i, then doubles a+_a a+_b a_j a_i with
/// i < j and a < b, each in lexicographic (i, j, a, b) order. Occupied
/// orbitals are those of hf_reference(n_elec, n_spin_orb).
std::vector<Excitation> uccsd_excitations(int n_elec, int n_spin_orb);

/// First-order Trotter product. Excitation k contributes one rotation per
/// Pauli string of JW(T - T+) = i sum_s r_s P_s, all sharing parameter k
/// with scale -2 r_s so that the element equals exp(theta r_s i P_s).
ParameterizedCircuit uccsd_circuit(const std::vector<Excitation>& excitations, int n_spin_orb);

enum class Entangler { chain, full };

/// reps x (Ry layer, Rz layer, CNOT entangler) followed by a last Ry and Rz
/// layer. Chain entangles q -> q+1; full entangles every pair i < j.
ParameterizedCircuit ryrz_circuit(unsigned n_qubits, unsigned reps, Entangler entangler = Entangler::chain);

/// Spread of the seeded RyRz starting point.
inline constexpr double kRyRzInitialSpread = 0.1;

/// n_params values uniform in [-spread, spread] drawn from CounterRng(seed, 0).
std::vector<double> ryrz_initial_params(std::size_t n_params, std::uint64_t seed,
                                        double spread = kRyRzInitialSpread);

struct OperatorPool {
  std::vector<PauliString> ops;
  std::vector<std::string> provenance;  // label of the first excitation producing ops[k]

  std::size_t size() const noexcept { return ops.size(); }
};

/// Distinct odd-Y Pauli strings of the JW-mapped generators in order of
/// first appearance. Throws when nothing survives.
OperatorPool build_pool(const std::vector<Excitation>& excitations, int n_spin_orb);

}  // namespace vqepes

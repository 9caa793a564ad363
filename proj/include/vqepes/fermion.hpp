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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vqepes/fcidump.hpp"
#include "vqepes/pauli.hpp"

namespace vqepes {

/// Contiguous window in ascending orbital-energy order, starting just above
/// the frozen doubly occupied orbitals.
struct HomoLumoWindow {};

/// Active orbitals named explicitly (0-based, file order).
struct ExplicitOrbitals {
  std::vector<int> indices;
};

struct ActiveSpaceSpec {
  int n_active_elec = 0;
  int n_active_orb = 0;
  std::variant<HomoLumoWindow, ExplicitOrbitals> selection = HomoLumoWindow{};

  /// "e,o" as used on the command line and in metadata.
  static ActiveSpaceSpec parse(std::string_view text);
  static ActiveSpaceSpec full(const FcidumpData& data);
};

/// Integrals over the active orbitals with the frozen core folded in.
struct ActiveSpaceIntegrals {
  OneBody h1;
  ElectronRepulsion h2;
  double e_core = 0.0;
  int n_elec = 0;
  std::vector<int> active_orbitals;  // indices into the source data
  std::vector<int> frozen_orbitals;

  int n_orb() const { return h1.n_orb(); }
};

/// Frozen-core folding:
///   e_core' = e_core + sum_f 2 h_ff + sum_{f,g} [2 (ff|gg) - (fg|gf)]
///   h'_pq   = h_pq + sum_f [2 (pq|ff) - (pf|fq)]
/// Orbitals above the window are discarded. Throws when the window does not
/// fit or when (n_elec - n_active_elec) is odd or negative.
ActiveSpaceIntegrals fold_active_space(const FcidumpData& data, const ActiveSpaceSpec& spec);

/// Electronic Hamiltonian integrals of a fixture taken as-is (no folding).
ActiveSpaceIntegrals full_space(const FcidumpData& data);

struct LadderOp {
  int mode = 0;
  bool create = false;
  friend bool operator==(const LadderOp&, const LadderOp&) = default;
};

/// Product of ladder operators, stored in the order written (leftmost first).
struct FermionTerm {
  std::vector<LadderOp> ops;
  cplx coeff;
};

struct FermionOperator {
  int n_modes = 0;
  std::vector<FermionTerm> terms;

  void add(std::vector<LadderOp> ops, cplx coeff) { terms.push_back({std::move(ops), coeff}); }
  FermionOperator adjoint() const;
};

inline LadderOp cre(int mode) { return {mode, true}; }
inline LadderOp ann(int mode) { return {mode, false}; }

/// Spin-orbital index under blocked ordering: alpha 0..n-1, beta n..2n-1.
inline int spin_orbital(int spatial, bool beta, int n_spatial) { return beta ? spatial + n_spatial : spatial; }

/// H = E_c + sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q,
/// spin-summed over 2n blocked spin orbitals.
FermionOperator build_hamiltonian(const OneBody& h1, const ElectronRepulsion& h2, double e_core);

/// a+_j -> 1/2 (X_j - i Y_j) Z_{j-1} ... Z_0. Output is simplified.
QubitOperator jordan_wigner(const FermionOperator& op);

/// Occupation bitmask of the Hartree-Fock determinant: ceil(n/2) alpha and
/// floor(n/2) beta electrons in the lowest orbitals of each spin block.
std::uint64_t hf_reference(int n_elec, int n_spin_orb);

/// <D|H|D> for the determinant `occupation` (blocked spin orbitals).
double determinant_energy(const OneBody& h1, const ElectronRepulsion& h2, double e_core,
                          std::uint64_t occupation);

/// Everything a solver needs for one geometry.
struct MolecularProblem {
  QubitOperator hamiltonian;
  int n_elec = 0;
  int n_qubits = 0;
  std::uint64_t reference = 0;
  double e_core = 0.0;
  double hf_energy = 0.0;  // determinant energy from the (folded) integrals
};

MolecularProblem make_problem(const ActiveSpaceIntegrals& integrals);

}  // namespace vqepes

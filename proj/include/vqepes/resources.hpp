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

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vqepes/circuit.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes {

struct GateCounts {
  std::size_t cnot = 0;
  std::size_t rz = 0;
  std::size_t sx = 0;
  std::size_t x = 0;

  std::size_t total() const { return cnot + rz + sx + x; }
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// Circuit over {CNOT, Rz, Sx, X}.
struct BasisCircuit {
  unsigned n_qubits = 0;
  std::vector<Gate> ops;

  GateCounts counts() const;
  /// Longest path through the dependency DAG (ops sharing a qubit are ordered).
  std::size_t depth() const;
  /// Same quantity from a per-qubit level schedule.
  std::size_t depth_by_levels() const;
};

/// Pauli rotations become basis changes (X: Rz(pi/2) Sx Rz(pi/2); Y: Sx in,
/// Rz(pi) Sx Rz(pi) out), a CNOT ladder onto the highest support qubit, the
/// central Rz and the mirror image. Ry(t) becomes Sx, Rz(t + pi), Sx, Rz(pi).
/// Angles below 1e-12 are dropped and adjacent inverse CNOT pairs cancel.
BasisCircuit decompose(const ParameterizedCircuit& circuit, std::span<const double> params);

/// Dense unitaries agree up to global phase within `tol`. Throws above 8 qubits.
bool verify_decomposition(const ParameterizedCircuit& circuit, std::span<const double> params, double tol = 1e-10);

/// "gate count" rows for CNOT, Rz, Sx, X and Depth, one column per circuit.
std::string resource_table(const std::vector<std::pair<std::string, BasisCircuit>>& circuits);

}  // namespace vqepes

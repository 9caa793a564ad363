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
#include <string_view>
#include <variant>
#include <vector>

#include "vqepes/pauli.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes {

/// exp(-i * scale * theta[param] / 2 * P)
struct PauliRotation {
  PauliString generator;
  std::size_t param = 0;
  double scale = 1.0;
};

/// Ry or Rz with angle theta[param].
struct ParamGate {
  GateKind kind = GateKind::Ry;
  unsigned qubit = 0;
  std::size_t param = 0;
};

/// Parameter-free gate (X, Sx, CNOT).
struct FixedGate {
  Gate gate;
};

using CircuitElement = std::variant<PauliRotation, ParamGate, FixedGate>;

class ParameterizedCircuit {
 public:
  ParameterizedCircuit() = default;
  explicit ParameterizedCircuit(unsigned n_qubits) : n_qubits_(n_qubits) {}

  unsigned n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_params() const noexcept { return n_params_; }
  const std::vector<CircuitElement>& elements() const noexcept { return elements_; }

  void add_rotation(const PauliString& p, std::size_t param, double scale = 1.0);
  void add_param_gate(GateKind kind, unsigned qubit, std::size_t param);
  void add_gate(const Gate& gate);

  /// Index for a parameter that no element uses yet.
  std::size_t new_param() { return n_params_++; }

  /// Throws unless parameter indices are exactly 0..n_params-1 and every
  /// qubit reference is in range.
  void validate() const;

  std::size_t count_rotations() const;
  std::size_t count_cnots() const;

  /// Line format:
  ///   QUBITS 4
  ///   ROT -0.5 X0Y1 p3
  ///   RY 1 p0
  ///   RZ 1 p1
  ///   CNOT 0 1
  ///   X 2
  std::string to_text() const;
  static ParameterizedCircuit parse(std::string_view text);

 private:
  void touch(std::size_t param);

  unsigned n_qubits_ = 0;
  std::size_t n_params_ = 0;
  std::vector<CircuitElement> elements_;
};

/// Applies every element of `circuit` to `state` in order.
void apply_circuit(StateVector& state, const ParameterizedCircuit& circuit, std::span<const double> params);

/// Reference determinant followed by the circuit.
StateVector prepare_state(const ParameterizedCircuit& circuit, std::span<const double> params,
                          std::uint64_t reference);

}  // namespace vqepes

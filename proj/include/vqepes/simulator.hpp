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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vqepes/pauli.hpp"

namespace vqepes {

/// Dense 2^n amplitude vector. Basis index bit i is qubit i.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(unsigned n_qubits);  // |0...0>

  unsigned n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  /// <this|other>
  cplx inner(const StateVector& other) const;

 private:
  unsigned n_qubits_ = 0;
  std::vector<cplx> amps_;
};

/// Largest register the simulator will allocate.
inline constexpr unsigned kMaxStateQubits = 26;

StateVector prepare_reference(std::uint64_t occupation, unsigned n_qubits);

/// |psi> <- cos(theta/2)|psi> - i sin(theta/2) P|psi>, in one pass.
void apply_pauli_rotation(StateVector& state, const PauliString& p, double theta);

/// psi <- P psi
void apply_pauli(StateVector& state, const PauliString& p);

enum class GateKind { X, Sx, Sxdg, H, Sdg, Rz, Ry, CNOT };

struct Gate {
  GateKind kind = GateKind::X;
  unsigned target = 0;
  unsigned control = 0;  // CNOT only
  double angle = 0.0;    // Rz / Ry only

  static Gate x(unsigned q) { return {GateKind::X, q, 0, 0.0}; }
  static Gate sx(unsigned q) { return {GateKind::Sx, q, 0, 0.0}; }
  static Gate rz(unsigned q, double a) { return {GateKind::Rz, q, 0, a}; }
  static Gate ry(unsigned q, double a) { return {GateKind::Ry, q, 0, a}; }
  static Gate cnot(unsigned control, unsigned target) { return {GateKind::CNOT, target, control, 0.0}; }
};

/// Sx = sqrt(X) = 1/2 [[1+i, 1-i], [1-i, 1+i]]; Rz(a) = diag(e^{-ia/2}, e^{ia/2});
/// Ry(a) = exp(-i a/2 Y). Throws on out-of-range qubits or control == target.
void apply_gate(StateVector& state, const Gate& gate);

/// Inverse of `gate` (same kind where possible).
Gate inverse(const Gate& gate);

/// Pauli sum grouped by X mask for fast application.
class CompiledOperator {
 public:
  explicit CompiledOperator(const QubitOperator& op);

  unsigned n_qubits() const noexcept { return n_qubits_; }
  bool hermitian() const noexcept { return hermitian_; }

  /// out = H psi
  void apply(const StateVector& psi, StateVector& out) const;
  /// <psi|H|psi>, complex so callers can check the imaginary residue.
  cplx expectation(const StateVector& psi) const;

 private:
  struct Group {
    std::uint64_t x_mask;
    std::vector<std::uint64_t> z_masks;
    std::vector<cplx> coeffs;  // includes i^{#Y}
  };
  unsigned n_qubits_ = 0;
  bool hermitian_ = true;
  std::vector<Group> groups_;
};

/// <psi|op|psi>. Throws for a non-Hermitian operator or |Im| >= 1e-10.
double expectation(const StateVector& state, const QubitOperator& op);
double expectation(const StateVector& state, const CompiledOperator& op);

/// Per-qubit readout flip probabilities.
struct ReadoutNoiseModel {
  std::vector<double> p01;  // P(read 1 | true 0)
  std::vector<double> p10;  // P(read 0 | true 1)

  static ReadoutNoiseModel uniform(unsigned n_qubits, double p01, double p10);
  void validate(unsigned n_qubits) const;
};

/// Counter-based generator: the k-th draw of stream s under seed is a pure
/// function of (seed, s, k).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct ShotResult {
  PauliString basis;
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // outcome bitstring -> occurrences
  std::uint64_t seed = 0;

  /// Mean of (-1)^{parity(outcome & support)} over the shots.
  double parity_mean() const;
};

/// Measures `basis` by rotating each support qubit into Z and sampling
/// `shots` outcomes. With twirl, each shot flips a uniformly random subset of
/// the support before readout and the same subset is XORed out afterwards.
ShotResult measure_pauli(const StateVector& state, const PauliString& basis, std::uint64_t shots,
                         std::uint64_t seed, const ReadoutNoiseModel* noise, bool twirl);

struct SampledEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

struct SamplingOptions {
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  std::optional<ReadoutNoiseModel> noise;
  bool twirl = false;
  /// Shots spent on each calibration circuit when twirl is on.
  std::uint64_t calibration_shots = 1024;
};

/// One circuit per non-identity Pauli term. With twirl, each term estimate is
/// divided by the twirled parity of |0...0> on the same support (T-REx).
SampledEstimate sample_expectation(const StateVector& state, const QubitOperator& op,
                                   const SamplingOptions& options);

}  // namespace vqepes

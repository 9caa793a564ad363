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

#include "vqepes/pauli.hpp"

namespace vqepes {

enum class EigenMethod { automatic, dense, iterative };

struct GroundStateOptions {
  EigenMethod method = EigenMethod::automatic;
  unsigned dense_max_qubits = 12;   // automatic switches to Lanczos above this
  unsigned iterative_max_qubits = 24;
  std::size_t sector_dense_max_dim = 1024;  // sector solver switches to Lanczos above this
  double residual_tol = 1e-9;
  std::size_t krylov_dim = 60;
  std::size_t max_restarts = 200;
  std::uint64_t seed = 0;
};

struct GroundStateResult {
  double energy = 0.0;
  bool degenerate = false;  // next eigenvalue within 1e-10
  EigenMethod method = EigenMethod::dense;
  std::size_t dimension = 0;
  double residual = 0.0;  // ||H v - E v|| for the iterative path
};

std::string to_string(EigenMethod m);

/// Lowest eigenvalue of a Hermitian Pauli sum. Throws SizeError above the
/// configured width and Error when Lanczos fails to reach the tolerance.
GroundStateResult ground_state(const QubitOperator& h, const GroundStateOptions& options = {});

/// Lowest eigenvalue over basis states with exactly `n_particles` set bits.
GroundStateResult ground_state_in_sector(const QubitOperator& h, int n_particles,
                                         const GroundStateOptions& options = {});

}  // namespace vqepes

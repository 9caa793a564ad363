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
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "vqepes/fcidump.hpp"
#include "vqepes/fermion.hpp"
#include "vqepes/pauli.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes::testing {

inline std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(VQEPES_FIXTURE_DIR) / relative;
}

inline std::filesystem::path h2_fixture(double distance) {
  char name[64];
  std::snprintf(name, sizeof name, "h2/h2_%.3f.fcidump", distance);
  return fixture(name);
}

inline MolecularProblem h2_problem(double distance) {
  return make_problem(full_space(read_fcidump(h2_fixture(distance))));
}

/// Value of `key` (e.g. "fci", "casci", "hf", "ecore") logged by the fixture
/// generator for `system` at `distance`.
inline std::optional<double> generation_log_value(const std::string& system, double distance, const std::string& key) {
  std::ifstream in(fixture("GENERATION_LOG.txt"));
  std::string line;
  char dist[32];
  std::snprintf(dist, sizeof dist, "d=%.3f", distance);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string sys, d, tok;
    ls >> sys >> d;
    if (sys != system || d != dist) continue;
    while (ls >> tok) {
      if (tok.rfind(key + "=", 0) == 0) return std::stod(tok.substr(key.size() + 1));
    }
  }
  return std::nullopt;
}

inline PauliString random_pauli(std::mt19937_64& rng, unsigned n) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return PauliString(n, rng() & mask, rng() & mask);
}

inline StateVector random_state(std::mt19937_64& rng, unsigned n) {
  std::normal_distribution<double> g;
  StateVector s(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    s[i] = cplx(g(rng), g(rng));
    norm += std::norm(s[i]);
  }
  for (std::size_t i = 0; i < s.dim(); ++i) s[i] /= std::sqrt(norm);
  return s;
}

inline Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v[Eigen::Index(i)] = s[i];
  return v;
}

/// Kronecker product built from single-qubit matrices, qubit 0 least significant.
inline Eigen::MatrixXcd kron_pauli(const std::string& dense) {
  const cplx i1(0.0, 1.0);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : dense) {
    Eigen::Matrix2cd m;
    switch (c) {
      case 'X': m << 0, 1, 1, 0; break;
      case 'Y': m << 0, -i1, i1, 0; break;
      case 'Z': m << 1, 0, 0, -1; break;
      default: m << 1, 0, 0, 1; break;
    }
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index col = 0; col < 2; ++col) next.block(r * out.rows(), col * out.cols(), out.rows(), out.cols()) = m(r, col) * out;
    }
    out = next;
  }
  return out;
}

inline Eigen::MatrixXcd kron_pauli_sum(const QubitOperator& op) {
  const Eigen::Index dim = Eigen::Index{1} << op.n_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : op.terms()) out += c * kron_pauli(p.to_dense());
  return out;
}

}  // namespace vqepes::testing

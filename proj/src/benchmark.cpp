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

#include "vqepes/benchmark.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "vqepes/error.hpp"
#include "vqepes/simulator.hpp"

namespace vqepes {

namespace {

using Apply = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

/// Terms with a common X mask; coefficients already carry i^{#Y}.
struct XGroup {
  std::uint64_t x;
  std::vector<std::uint64_t> z;
  std::vector<cplx> c;
};

std::vector<XGroup> group_terms(const QubitOperator& h) {
  std::map<std::uint64_t, XGroup> m;
  const cplx ipow[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  for (const auto& [p, c] : h.terms()) {
    auto& g = m[p.x_mask()];
    g.x = p.x_mask();
    g.z.push_back(p.z_mask());
    g.c.push_back(c * ipow[p.y_count() % 4]);
  }
  std::vector<XGroup> out;
  for (auto& [x, g] : m) out.push_back(std::move(g));
  return out;
}

cplx group_phase(const XGroup& g, std::uint64_t b) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < g.z.size(); ++k) acc += (std::popcount(b & g.z[k]) & 1) ? -g.c[k] : g.c[k];
  return acc;
}

struct LanczosOutcome {
  double energy;
  double second;
  double residual;
};

LanczosOutcome lanczos(const Apply& apply, Eigen::Index dim, const GroundStateOptions& opt) {
  CounterRng rng(opt.seed, 0x4c414e43ULL);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  v.normalize();

  const std::size_t budget_vectors = std::max<std::size_t>(8, (std::size_t{1} << 31) / (16 * std::size_t(dim)));
  const Eigen::Index m = static_cast<Eigen::Index>(std::min({opt.krylov_dim, budget_vectors, std::size_t(dim)}));
  Eigen::MatrixXcd basis(dim, m);
  Eigen::VectorXcd w(dim);
  Eigen::VectorXcd hy(dim);
  LanczosOutcome out{0.0, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t restart = 0; restart < opt.max_restarts; ++restart) {
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = v;
    Eigen::Index k = 0;
    for (; k < m; ++k) {
      apply(basis.col(k), w);
      alpha.push_back(basis.col(k).dot(w).real());
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd proj = basis.leftCols(k + 1).adjoint() * w;
        w.noalias() -= basis.leftCols(k + 1) * proj;
      }
      const double b = w.norm();
      if (k + 1 == m || b < 1e-13 * std::max(1.0, std::abs(alpha.back()))) {
        ++k;
        break;
      }
      beta.push_back(b);
      basis.col(k + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[std::size_t(i)];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[std::size_t(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    out.energy = es.eigenvalues()[0];
    out.second = k > 1 ? es.eigenvalues()[1] : std::numeric_limits<double>::infinity();
    v = basis.leftCols(k) * es.eigenvectors().col(0).cast<cplx>();
    v.normalize();
    apply(v, hy);
    out.energy = v.dot(hy).real();
    out.residual = (hy - out.energy * v).norm();
    if (out.residual < opt.residual_tol) return out;
  }
  throw Error(fmt::format("Lanczos did not converge: residual {:.3e} after {} restarts", out.residual,
                          opt.max_restarts));
}

GroundStateResult dense_lowest(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  GroundStateResult r;
  r.energy = es.eigenvalues()[0];
  r.degenerate = m.rows() > 1 && es.eigenvalues()[1] - es.eigenvalues()[0] < 1e-10;
  r.method = EigenMethod::dense;
  r.dimension = static_cast<std::size_t>(m.rows());
  return r;
}

void check_hermitian(const QubitOperator& h) {
  if (!h.is_hermitian()) throw Error("ground state requested for a non-Hermitian operator");
}

/// Splits off the identity coefficient so the solvers see a traceless part.
std::pair<QubitOperator, double> strip_identity(const QubitOperator& h) {
  const QubitOperator s = h.simplify();
  QubitOperator rest(s.n_qubits());
  double shift = 0.0;
  for (const auto& [p, c] : s.terms()) {
    if (p.is_identity()) {
      shift += c.real();
    } else {
      rest.add(p, c);
    }
  }
  return {rest, shift};
}

}  // namespace

std::string to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::automatic: return "automatic";
    case EigenMethod::dense: return "dense";
    case EigenMethod::iterative: return "iterative";
  }
  return "?";
}

GroundStateResult ground_state(const QubitOperator& h, const GroundStateOptions& options) {
  check_hermitian(h);
  const unsigned n = h.n_qubits();
  EigenMethod method = options.method;
  if (method == EigenMethod::automatic) {
    method = n <= options.dense_max_qubits ? EigenMethod::dense : EigenMethod::iterative;
  }
  if (method == EigenMethod::dense && n > std::min(options.dense_max_qubits, kMaxDenseQubits)) {
    throw SizeError(fmt::format("dense diagonalization limited to {} qubits, operator has {}",
                                std::min(options.dense_max_qubits, kMaxDenseQubits), n));
  }
  if (n > options.iterative_max_qubits) {
    throw SizeError(fmt::format("ground state limited to {} qubits, operator has {}", options.iterative_max_qubits, n));
  }
  const auto [rest, shift] = strip_identity(h);
  if (method == EigenMethod::dense) {
    GroundStateResult r = dense_lowest(to_matrix(rest));
    r.energy += shift;
    return r;
  }
  const auto groups = group_terms(rest);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Apply apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    out.setZero();
    for (const auto& g : groups) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        out[b ^ Eigen::Index(g.x)] += group_phase(g, std::uint64_t(b)) * in[b];
      }
    }
  };
  const LanczosOutcome lo = lanczos(apply, dim, options);
  GroundStateResult r;
  r.energy = lo.energy + shift;
  r.degenerate = lo.second - lo.energy < 1e-10;
  r.method = EigenMethod::iterative;
  r.dimension = std::size_t(dim);
  r.residual = lo.residual;
  return r;
}

GroundStateResult ground_state_in_sector(const QubitOperator& h, int n_particles, const GroundStateOptions& options) {
  check_hermitian(h);
  const unsigned n = h.n_qubits();
  if (n > options.iterative_max_qubits) {
    throw SizeError(fmt::format("ground state limited to {} qubits, operator has {}", options.iterative_max_qubits, n));
  }
  if (n_particles < 0 || n_particles > static_cast<int>(n)) {
    throw Error(fmt::format("sector with {} particles is empty on {} qubits", n_particles, n));
  }
  std::vector<std::uint64_t> states;
  std::vector<std::int64_t> index(std::size_t{1} << n, -1);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    if (std::popcount(b) == n_particles) {
      index[b] = static_cast<std::int64_t>(states.size());
      states.push_back(b);
    }
  }
  const auto [rest, shift] = strip_identity(h);
  const auto groups = group_terms(rest);
  const Eigen::Index dim = static_cast<Eigen::Index>(states.size());

  EigenMethod method = options.method;
  if (method == EigenMethod::automatic) {
    method = std::size_t(dim) <= options.sector_dense_max_dim ? EigenMethod::dense : EigenMethod::iterative;
  }
  if (method == EigenMethod::dense) {
    if (dim > (Eigen::Index{1} << kMaxDenseQubits)) throw SizeError("sector too large for dense diagonalization");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const std::uint64_t b = states[std::size_t(col)];
      for (const auto& g : groups) {
        const std::int64_t row = index[b ^ g.x];
        if (row >= 0) m(row, col) += group_phase(g, b);
      }
    }
    GroundStateResult r = dense_lowest(m);
    r.energy += shift;
    return r;
  }
  Apply apply = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    out.setZero();
    for (const auto& g : groups) {
      for (Eigen::Index col = 0; col < dim; ++col) {
        const std::uint64_t b = states[std::size_t(col)];
        const std::int64_t row = index[b ^ g.x];
        if (row >= 0) out[row] += group_phase(g, b) * in[col];
      }
    }
  };
  const LanczosOutcome lo = lanczos(apply, dim, options);
  GroundStateResult r;
  r.energy = lo.energy + shift;
  r.degenerate = lo.second - lo.energy < 1e-10;
  r.method = EigenMethod::iterative;
  r.dimension = std::size_t(dim);
  r.residual = lo.residual;
  return r;
}

}  // namespace vqepes

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

#include "vqepes/resources.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <variant>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

constexpr double kElide = 1e-12;
constexpr double kPi = std::numbers::pi;

/// Appends ops while cancelling a CNOT against an identical CNOT that is the
/// latest op on both of its qubits.
class Builder {
 public:
  explicit Builder(unsigned n) : n_(n), last_(n) {}

  void push(const Gate& g) {
    if (g.kind == GateKind::CNOT) {
      auto& sc = last_[g.control];
      auto& st = last_[g.target];
      if (!sc.empty() && !st.empty() && sc.back() == st.back()) {
        const Gate& prev = ops_[sc.back()];
        if (prev.kind == GateKind::CNOT && prev.control == g.control && prev.target == g.target) {
          alive_[sc.back()] = false;
          sc.pop_back();
          st.pop_back();
          return;
        }
      }
      sc.push_back(ops_.size());
      st.push_back(ops_.size());
    } else {
      last_[g.target].push_back(ops_.size());
    }
    ops_.push_back(g);
    alive_.push_back(true);
  }

  void rz(unsigned q, double angle) { push(Gate::rz(q, angle)); }
  void sx(unsigned q) { push(Gate::sx(q)); }

  BasisCircuit finish() const {
    BasisCircuit c;
    c.n_qubits = n_;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (alive_[i]) c.ops.push_back(ops_[i]);
    }
    return c;
  }

 private:
  unsigned n_;
  std::vector<std::vector<std::size_t>> last_;
  std::vector<Gate> ops_;
  std::vector<bool> alive_;
};

void pauli_rotation(Builder& b, const PauliString& p, double theta) {
  if (std::abs(theta) < kElide || p.is_identity()) return;
  std::vector<unsigned> support;
  for (unsigned q = 0; q < p.n_qubits(); ++q) {
    if (p.at(q) != 'I') support.push_back(q);
  }
  for (unsigned q : support) {
    if (p.at(q) == 'X') {
      b.rz(q, kPi / 2);
      b.sx(q);
      b.rz(q, kPi / 2);
    } else if (p.at(q) == 'Y') {
      b.sx(q);
    }
  }
  for (std::size_t k = 0; k + 1 < support.size(); ++k) b.push(Gate::cnot(support[k], support[k + 1]));
  b.rz(support.back(), theta);
  for (std::size_t k = support.size() - 1; k-- > 0;) b.push(Gate::cnot(support[k], support[k + 1]));
  for (unsigned q : support) {
    if (p.at(q) == 'X') {
      b.rz(q, kPi / 2);
      b.sx(q);
      b.rz(q, kPi / 2);
    } else if (p.at(q) == 'Y') {
      b.rz(q, kPi);
      b.sx(q);
      b.rz(q, kPi);
    }
  }
}

void ry(Builder& b, unsigned q, double theta) {
  if (std::abs(theta) < kElide) return;
  b.sx(q);
  b.rz(q, theta + kPi);
  b.sx(q);
  b.rz(q, kPi);
}

Eigen::MatrixXcd unitary_of(unsigned n, const std::function<void(StateVector&)>& run) {
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector s = prepare_reference(j, n);
    run(s);
    for (std::size_t i = 0; i < dim; ++i) u(Eigen::Index(i), Eigen::Index(j)) = s[i];
  }
  return u;
}

}  // namespace

GateCounts BasisCircuit::counts() const {
  GateCounts c;
  for (const auto& g : ops) {
    switch (g.kind) {
      case GateKind::CNOT: ++c.cnot; break;
      case GateKind::Rz: ++c.rz; break;
      case GateKind::Sx: ++c.sx; break;
      case GateKind::X: ++c.x; break;
      default: throw Error("basis circuit holds a gate outside {CNOT, Rz, Sx, X}");
    }
  }
  return c;
}

std::size_t BasisCircuit::depth() const {
  // Edges run from the previous op on each touched qubit.
  std::vector<std::vector<std::size_t>> preds(ops.size());
  std::vector<std::ptrdiff_t> last(n_qubits, -1);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    auto link = [&](unsigned q) {
      if (last[q] >= 0) preds[i].push_back(std::size_t(last[q]));
      last[q] = std::ptrdiff_t(i);
    };
    link(ops[i].target);
    if (ops[i].kind == GateKind::CNOT) link(ops[i].control);
  }
  std::vector<std::size_t> longest(ops.size(), 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t p : preds[i]) longest[i] = std::max(longest[i], longest[p] + 1);
    best = std::max(best, longest[i]);
  }
  return best;
}

std::size_t BasisCircuit::depth_by_levels() const {
  std::vector<std::size_t> level(n_qubits, 0);
  for (const auto& g : ops) {
    if (g.kind == GateKind::CNOT) {
      const std::size_t l = std::max(level[g.control], level[g.target]) + 1;
      level[g.control] = level[g.target] = l;
    } else {
      ++level[g.target];
    }
  }
  return level.empty() ? 0 : *std::max_element(level.begin(), level.end());
}

BasisCircuit decompose(const ParameterizedCircuit& circuit, std::span<const double> params) {
  if (params.size() != circuit.n_params()) {
    throw Error(fmt::format("circuit takes {} parameters, got {}", circuit.n_params(), params.size()));
  }
  Builder b(circuit.n_qubits());
  for (const auto& e : circuit.elements()) {
    if (const auto* r = std::get_if<PauliRotation>(&e)) {
      pauli_rotation(b, r->generator, r->scale * params[r->param]);
    } else if (const auto* g = std::get_if<ParamGate>(&e)) {
      const double theta = params[g->param];
      if (g->kind == GateKind::Ry) {
        ry(b, g->qubit, theta);
      } else if (std::abs(theta) >= kElide) {
        b.rz(g->qubit, theta);
      }
    } else {
      const Gate& gate = std::get<FixedGate>(e).gate;
      switch (gate.kind) {
        case GateKind::X:
        case GateKind::Sx:
        case GateKind::CNOT: b.push(gate); break;
        default: throw Error("gate kind has no basis decomposition");
      }
    }
  }
  return b.finish();
}

bool verify_decomposition(const ParameterizedCircuit& circuit, std::span<const double> params, double tol) {
  const unsigned n = circuit.n_qubits();
  if (n > 8) throw SizeError(fmt::format("decomposition check limited to 8 qubits, circuit has {}", n));
  const BasisCircuit basis = decompose(circuit, params);
  const Eigen::MatrixXcd src = unitary_of(n, [&](StateVector& s) { apply_circuit(s, circuit, params); });
  const Eigen::MatrixXcd dec = unitary_of(n, [&](StateVector& s) {
    for (const auto& g : basis.ops) apply_gate(s, g);
  });
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  src.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(dec(r, c)) < 1e-12) return false;
  const cplx phase = src(r, c) / dec(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return (dec * phase - src).cwiseAbs().maxCoeff() < tol;
}

std::string resource_table(const std::vector<std::pair<std::string, BasisCircuit>>& circuits) {
  std::string out = fmt::format("{:<8}", "gate");
  for (const auto& [name, c] : circuits) out += fmt::format(" {:>12}", name);
  out += '\n';
  std::vector<GateCounts> counts;
  for (const auto& [name, c] : circuits) counts.push_back(c.counts());
  auto row = [&](const char* label, auto get) {
    out += fmt::format("{:<8}", label);
    for (std::size_t i = 0; i < circuits.size(); ++i) out += fmt::format(" {:>12}", get(i));
    out += '\n';
  };
  row("CNOT", [&](std::size_t i) { return counts[i].cnot; });
  row("Rz", [&](std::size_t i) { return counts[i].rz; });
  row("Sx", [&](std::size_t i) { return counts[i].sx; });
  row("X", [&](std::size_t i) { return counts[i].x; });
  row("Depth", [&](std::size_t i) { return circuits[i].second.depth(); });
  return out;
}

}  // namespace vqepes

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

#include "vqepes/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t parse_param(const std::string& tok, std::size_t line) {
  if (tok.size() < 2 || tok[0] != 'p') throw ParseError(fmt::format("expected p<index>, got '{}'", tok), line);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("bad parameter '{}'", tok), line);
  }
  return v;
}

unsigned parse_qubit(const std::string& tok, std::size_t line) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("bad qubit index '{}'", tok), line);
  }
  return v;
}

}  // namespace

void ParameterizedCircuit::touch(std::size_t param) { n_params_ = std::max(n_params_, param + 1); }

void ParameterizedCircuit::add_rotation(const PauliString& p, std::size_t param, double scale) {
  if (p.n_qubits() != n_qubits_) throw Error("rotation width differs from circuit width");
  elements_.emplace_back(PauliRotation{p, param, scale});
  touch(param);
}

void ParameterizedCircuit::add_param_gate(GateKind kind, unsigned qubit, std::size_t param) {
  if (kind != GateKind::Ry && kind != GateKind::Rz) throw Error("only Ry and Rz take parameters");
  if (qubit >= n_qubits_) throw Error(fmt::format("qubit {} out of range", qubit));
  elements_.emplace_back(ParamGate{kind, qubit, param});
  touch(param);
}

void ParameterizedCircuit::add_gate(const Gate& gate) {
  if (gate.target >= n_qubits_ || (gate.kind == GateKind::CNOT && gate.control >= n_qubits_)) {
    throw Error("gate qubit out of range");
  }
  if (gate.kind == GateKind::CNOT && gate.control == gate.target) {
    throw Error("CNOT control and target coincide");
  }
  elements_.emplace_back(FixedGate{gate});
}

void ParameterizedCircuit::validate() const {
  std::vector<bool> used(n_params_, false);
  for (const auto& e : elements_) {
    std::visit(overloaded{
                   [&](const PauliRotation& r) {
                     if (r.generator.n_qubits() != n_qubits_) throw Error("rotation width mismatch");
                     used.at(r.param) = true;
                   },
                   [&](const ParamGate& g) {
                     if (g.qubit >= n_qubits_) throw Error("parameterized gate qubit out of range");
                     used.at(g.param) = true;
                   },
                   [&](const FixedGate& g) {
                     if (g.gate.target >= n_qubits_) throw Error("gate qubit out of range");
                   },
               },
               e);
  }
  for (std::size_t k = 0; k < used.size(); ++k) {
    if (!used[k]) throw Error(fmt::format("parameter p{} is not used by any element", k));
  }
}

std::size_t ParameterizedCircuit::count_rotations() const {
  return static_cast<std::size_t>(std::count_if(elements_.begin(), elements_.end(), [](const auto& e) {
    return std::holds_alternative<PauliRotation>(e);
  }));
}

std::size_t ParameterizedCircuit::count_cnots() const {
  return static_cast<std::size_t>(std::count_if(elements_.begin(), elements_.end(), [](const auto& e) {
    const auto* g = std::get_if<FixedGate>(&e);
    return g && g->gate.kind == GateKind::CNOT;
  }));
}

std::string ParameterizedCircuit::to_text() const {
  std::string out = fmt::format("QUBITS {}\n", n_qubits_);
  for (const auto& e : elements_) {
    std::visit(overloaded{
                   [&](const PauliRotation& r) {
                     out += fmt::format("ROT {:.17g} {} p{}\n", r.scale, r.generator.to_sparse(), r.param);
                   },
                   [&](const ParamGate& g) {
                     out += fmt::format("{} {} p{}\n", g.kind == GateKind::Ry ? "RY" : "RZ", g.qubit, g.param);
                   },
                   [&](const FixedGate& g) {
                     switch (g.gate.kind) {
                       case GateKind::CNOT: out += fmt::format("CNOT {} {}\n", g.gate.control, g.gate.target); break;
                       case GateKind::X: out += fmt::format("X {}\n", g.gate.target); break;
                       case GateKind::Sx: out += fmt::format("SX {}\n", g.gate.target); break;
                       default: throw Error("gate kind has no circuit text form");
                     }
                   },
               },
               e);
  }
  return out;
}

ParameterizedCircuit ParameterizedCircuit::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<ParameterizedCircuit> c;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& op = tok[0];
    if (op == "QUBITS") {
      if (c || tok.size() != 2) throw ParseError("QUBITS must appear once, first", line_no);
      c.emplace(parse_qubit(tok[1], line_no));
      continue;
    }
    if (!c) throw ParseError("missing QUBITS header", line_no);
    try {
      if (op == "ROT" && tok.size() == 4) {
        double scale = 0.0;
        auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), scale);
        if (ec != std::errc{} || ptr != tok[1].data() + tok[1].size()) throw ParseError("bad scale", line_no);
        c->add_rotation(PauliString::from_sparse(tok[2], c->n_qubits()), parse_param(tok[3], line_no), scale);
      } else if ((op == "RY" || op == "RZ") && tok.size() == 3) {
        c->add_param_gate(op == "RY" ? GateKind::Ry : GateKind::Rz, parse_qubit(tok[1], line_no),
                          parse_param(tok[2], line_no));
      } else if (op == "CNOT" && tok.size() == 3) {
        c->add_gate(Gate::cnot(parse_qubit(tok[1], line_no), parse_qubit(tok[2], line_no)));
      } else if (op == "X" && tok.size() == 2) {
        c->add_gate(Gate::x(parse_qubit(tok[1], line_no)));
      } else if (op == "SX" && tok.size() == 2) {
        c->add_gate(Gate::sx(parse_qubit(tok[1], line_no)));
      } else {
        throw ParseError(fmt::format("unrecognised circuit line '{}'", line), line_no);
      }
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), line_no);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!c) throw ParseError("missing QUBITS header", 0);
  return *c;
}

void apply_circuit(StateVector& state, const ParameterizedCircuit& circuit, std::span<const double> params) {
  if (params.size() != circuit.n_params()) {
    throw Error(fmt::format("circuit takes {} parameters, got {}", circuit.n_params(), params.size()));
  }
  if (state.n_qubits() != circuit.n_qubits()) throw Error("circuit width differs from state width");
  for (const auto& e : circuit.elements()) {
    std::visit(overloaded{
                   [&](const PauliRotation& r) { apply_pauli_rotation(state, r.generator, r.scale * params[r.param]); },
                   [&](const ParamGate& g) { apply_gate(state, {g.kind, g.qubit, 0, params[g.param]}); },
                   [&](const FixedGate& g) { apply_gate(state, g.gate); },
               },
               e);
  }
}

StateVector prepare_state(const ParameterizedCircuit& circuit, std::span<const double> params,
                          std::uint64_t reference) {
  StateVector s = prepare_reference(reference, circuit.n_qubits());
  apply_circuit(s, circuit, params);
  return s;
}

}  // namespace vqepes

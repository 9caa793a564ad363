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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "test_util.hpp"
#include "vqepes/error.hpp"

namespace vqepes {
namespace {

ParameterizedCircuit sample_circuit() {
  ParameterizedCircuit c(3);
  c.add_gate(Gate::x(0));
  c.add_rotation(PauliString::from_sparse("X0Y1", 3), 0, -0.5);
  c.add_param_gate(GateKind::Ry, 2, 1);
  c.add_param_gate(GateKind::Rz, 1, 2);
  c.add_gate(Gate::cnot(0, 2));
  c.add_gate(Gate::sx(1));
  c.add_rotation(PauliString::from_sparse("Z0Z2", 3), 0, 0.1);
  return c;
}

TEST(ParameterizedCircuit, CountsAndParams) {
  const ParameterizedCircuit c = sample_circuit();
  EXPECT_EQ(c.n_params(), 3u);
  EXPECT_EQ(c.count_rotations(), 2u);
  EXPECT_EQ(c.count_cnots(), 1u);
  EXPECT_NO_THROW(c.validate());
}

TEST(ParameterizedCircuit, TextRoundTrip) {
  const ParameterizedCircuit c = sample_circuit();
  const std::string text = c.to_text();
  EXPECT_NE(text.find("ROT -0.5 X0Y1 p0"), std::string::npos);
  EXPECT_NE(text.find("RY 2 p1"), std::string::npos);
  EXPECT_NE(text.find("CNOT 0 2"), std::string::npos);
  const ParameterizedCircuit back = ParameterizedCircuit::parse(text);
  EXPECT_EQ(back.to_text(), text);

  std::mt19937_64 rng(1);
  const std::vector<double> params{0.3, -1.2, 2.5};
  const StateVector a = prepare_state(c, params, 0b010);
  const StateVector b = prepare_state(back, params, 0b010);
  EXPECT_NEAR(std::norm(a.inner(b)), 1.0, 1e-15);
}

TEST(ParameterizedCircuit, ParseErrors) {
  EXPECT_THROW(ParameterizedCircuit::parse("CNOT 0 1\n"), ParseError);
  EXPECT_THROW(ParameterizedCircuit::parse(""), ParseError);
  try {
    ParameterizedCircuit::parse("QUBITS 2\nRY 0 p0\nFOO 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(ParameterizedCircuit::parse("QUBITS 2\nCNOT 0 2\n"), ParseError);
  EXPECT_THROW(ParameterizedCircuit::parse("QUBITS 2\nRY 0 q0\n"), ParseError);
  EXPECT_THROW(ParameterizedCircuit::parse("QUBITS 2\nROT x X0 p0\n"), ParseError);
}

TEST(ParameterizedCircuit, ValidationRejectsGapsAndRange) {
  ParameterizedCircuit gap(2);
  gap.add_param_gate(GateKind::Ry, 0, 1);
  EXPECT_THROW(gap.validate(), Error);

  ParameterizedCircuit c(2);
  EXPECT_THROW(c.add_gate(Gate::x(2)), Error);
  EXPECT_THROW(c.add_gate(Gate::cnot(1, 1)), Error);
  EXPECT_THROW(c.add_param_gate(GateKind::Ry, 5, 0), Error);
  EXPECT_THROW(c.add_param_gate(GateKind::CNOT, 0, 0), Error);
  EXPECT_THROW(c.add_rotation(PauliString::from_dense("XXX"), 0), Error);
}

TEST(ParameterizedCircuit, NewParamAllocatesFreshIndex) {
  ParameterizedCircuit c(1);
  const std::size_t p0 = c.new_param();
  const std::size_t p1 = c.new_param();
  EXPECT_EQ(p0, 0u);
  EXPECT_EQ(p1, 1u);
  c.add_param_gate(GateKind::Ry, 0, p0);
  c.add_param_gate(GateKind::Rz, 0, p1);
  EXPECT_NO_THROW(c.validate());
}

TEST(ApplyCircuit, ParameterCountMismatchThrows) {
  const ParameterizedCircuit c = sample_circuit();
  StateVector s(3);
  const std::vector<double> two{0.1, 0.2};
  EXPECT_THROW(apply_circuit(s, c, two), Error);
  StateVector wrong(2);
  const std::vector<double> three{0.1, 0.2, 0.3};
  EXPECT_THROW(apply_circuit(wrong, c, three), Error);
}

TEST(ApplyCircuit, RotationScaleMultipliesAngle) {
  ParameterizedCircuit c(1);
  c.add_rotation(PauliString::from_dense("Y"), 0, 2.0);
  const std::vector<double> theta{0.4};
  const StateVector s = prepare_state(c, theta, 0);
  StateVector t(1);
  apply_gate(t, Gate::ry(0, 0.8));
  EXPECT_NEAR(std::norm(s.inner(t)), 1.0, 1e-15);
}

}  // namespace
}  // namespace vqepes

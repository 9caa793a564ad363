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

#include "vqepes/ansatz.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "test_util.hpp"
#include "vqepes/error.hpp"

namespace vqepes {
namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Counting oracle: same-spin singles plus aa, bb and ab doubles.
long uccsd_count(int n_elec, int n_spin_orb) {
  const long n = n_spin_orb / 2;
  const long na = (n_elec + 1) / 2, nb = n_elec / 2;
  const long va = n - na, vb = n - nb;
  return na * va + nb * vb + binom(na, 2) * binom(va, 2) + binom(nb, 2) * binom(vb, 2) + na * nb * va * vb;
}

// Brute-force oracle over every pair of occupied and virtual spin orbitals.
std::vector<std::vector<int>> enumerate_spin_allowed(int n_elec, int n_spin_orb) {
  const std::uint64_t ref = hf_reference(n_elec, n_spin_orb);
  const int n = n_spin_orb / 2;
  auto spin = [n](int p) { return p >= n; };
  std::vector<int> occ, vir;
  for (int p = 0; p < n_spin_orb; ++p) ((ref >> p) & 1 ? occ : vir).push_back(p);
  std::vector<std::vector<int>> out;
  for (int i : occ)
    for (int a : vir)
      if (spin(i) == spin(a)) out.push_back({i, a});
  for (int i : occ)
    for (int j : occ)
      for (int a : vir)
        for (int b : vir)
          if (i < j && a < b && spin(i) + spin(j) == spin(a) + spin(b)) out.push_back({i, j, a, b});
  return out;
}

TEST(UccsdExcitations, H2HasTwoSinglesAndOneDouble) {
  const auto ex = uccsd_excitations(2, 4);
  ASSERT_EQ(ex.size(), 3u);
  EXPECT_EQ(ex[0].label(), "0->1");
  EXPECT_EQ(ex[1].label(), "2->3");
  EXPECT_EQ(ex[2].label(), "0,2->1,3");
}

TEST(UccsdExcitations, NoVirtualsGivesEmptyList) { EXPECT_TRUE(uccsd_excitations(2, 2).empty()); }

TEST(UccsdExcitations, CountMatchesCombinatorics) {
  for (auto [ne, nso] : std::vector<std::pair<int, int>>{{2, 4}, {6, 14}, {4, 8}, {3, 8}, {2, 12}}) {
    const auto ex = uccsd_excitations(ne, nso);
    EXPECT_EQ(long(ex.size()), uccsd_count(ne, nso)) << ne << "," << nso;
    const auto oracle = enumerate_spin_allowed(ne, nso);
    ASSERT_EQ(ex.size(), oracle.size());
    for (std::size_t k = 0; k < ex.size(); ++k) {
      std::vector<int> idx = ex[k].occupied;
      idx.insert(idx.end(), ex[k].virtuals.begin(), ex[k].virtuals.end());
      EXPECT_EQ(idx, oracle[k]) << k;
    }
  }
  EXPECT_EQ(uccsd_excitations(6, 14).size(), 204u);
}

TEST(UccsdExcitations, GeneratorsAreAntiHermitian) {
  for (const auto& e : uccsd_excitations(4, 8)) {
    const QubitOperator q = jordan_wigner(e.generator);
    const QubitOperator sum = (q + q.adjoint()).simplify();
    EXPECT_TRUE(sum.empty()) << e.label();
  }
}

Excitation single_0_to_1() {
  Excitation e;
  e.occupied = {0};
  e.virtuals = {1};
  e.generator.n_modes = 2;
  e.generator.add({cre(1), ann(0)}, 1.0);
  e.generator.add({cre(0), ann(1)}, -1.0);
  return e;
}

TEST(UccsdCircuit, SingleExcitationGivesTwoRotations) {
  const ParameterizedCircuit c = uccsd_circuit({single_0_to_1()}, 2);
  EXPECT_EQ(c.n_params(), 1u);
  ASSERT_EQ(c.count_rotations(), 2u);
  std::set<std::string> words;
  for (const auto& e : c.elements()) {
    const auto& r = std::get<PauliRotation>(e);
    words.insert(r.generator.to_sparse());
    EXPECT_EQ(r.param, 0u);
    EXPECT_NEAR(std::abs(r.scale), 1.0, 1e-15);
  }
  EXPECT_EQ(words, (std::set<std::string>{"X0Y1", "Y0X1"}));

  // exp(theta (a+_1 a_0 - h.c.)) |01> = cos theta |01> + sin theta |10>.
  const std::vector<double> theta{0.3};
  const StateVector s = prepare_state(c, theta, 0b01);
  EXPECT_NEAR(s[0b01].real(), std::cos(0.3), 1e-14);
  EXPECT_NEAR(s[0b10].real(), std::sin(0.3), 1e-14);
}

TEST(UccsdCircuit, EmptyExcitationList) {
  const ParameterizedCircuit c = uccsd_circuit({}, 4);
  EXPECT_EQ(c.n_params(), 0u);
  EXPECT_TRUE(c.elements().empty());
}

TEST(UccsdCircuit, H2HasThreeParamsAndTwelveRotations) {
  const ParameterizedCircuit c = uccsd_circuit(uccsd_excitations(2, 4), 4);
  EXPECT_EQ(c.n_params(), 3u);
  EXPECT_EQ(c.count_rotations(), 12u);
  EXPECT_NO_THROW(c.validate());
}

TEST(UccsdCircuit, IdentityAtZero) {
  for (auto [ne, nso] : std::vector<std::pair<int, int>>{{2, 4}, {4, 8}, {3, 8}}) {
    const ParameterizedCircuit c = uccsd_circuit(uccsd_excitations(ne, nso), nso);
    const std::vector<double> zeros(c.n_params(), 0.0);
    const std::uint64_t ref = hf_reference(ne, nso);
    const StateVector s = prepare_state(c, zeros, ref);
    EXPECT_NEAR(std::abs(s[ref]), 1.0, 1e-15);
  }
}

TEST(UccsdCircuit, PreservesParticleNumber) {
  const ParameterizedCircuit c = uccsd_circuit(uccsd_excitations(4, 8), 8);
  std::mt19937_64 rng(3);
  std::vector<double> params(c.n_params());
  for (double& p : params) p = std::uniform_real_distribution<double>(-1, 1)(rng);
  const StateVector s = prepare_state(c, params, hf_reference(4, 8));
  double weight = 0.0;
  for (std::uint64_t b = 0; b < s.dim(); ++b) {
    if (std::popcount(b) == 4) weight += std::norm(s[b]);
  }
  EXPECT_NEAR(weight, 1.0, 1e-12);
}

TEST(RyRzCircuit, StructureCounts) {
  const ParameterizedCircuit a = ryrz_circuit(2, 0);
  EXPECT_EQ(a.n_params(), 4u);
  EXPECT_EQ(a.count_cnots(), 0u);
  const ParameterizedCircuit b = ryrz_circuit(10, 3);
  EXPECT_EQ(b.count_cnots(), 27u);
  EXPECT_EQ(b.n_params(), 80u);
  const ParameterizedCircuit c = ryrz_circuit(3, 1);
  EXPECT_EQ(c.n_params(), 12u);
  EXPECT_EQ(c.count_cnots(), 2u);
  const ParameterizedCircuit d = ryrz_circuit(4, 2, Entangler::full);
  EXPECT_EQ(d.count_cnots(), 12u);
  for (const auto* x : {&a, &b, &c, &d}) EXPECT_NO_THROW(x->validate());
}

TEST(RyRzCircuit, ZeroParametersPermuteBasisStates) {
  const unsigned n = 4, reps = 3;
  const ParameterizedCircuit c = ryrz_circuit(n, reps);
  const std::vector<double> zeros(c.n_params(), 0.0);
  std::uint64_t bits = 0b0011;
  for (unsigned r = 0; r < reps; ++r) {
    for (unsigned q = 0; q + 1 < n; ++q) {
      if ((bits >> q) & 1) bits ^= std::uint64_t{1} << (q + 1);
    }
  }
  const StateVector s = prepare_state(c, zeros, 0b0011);
  EXPECT_NEAR(std::abs(s[bits]), 1.0, 1e-15);
}

TEST(BuildPool, SingleExcitation) {
  const OperatorPool pool = build_pool({single_0_to_1()}, 2);
  ASSERT_EQ(pool.size(), 2u);
  std::set<std::string> words;
  for (const auto& p : pool.ops) words.insert(p.to_sparse());
  EXPECT_EQ(words, (std::set<std::string>{"X0Y1", "Y0X1"}));
  EXPECT_EQ(pool.provenance[0], "0->1");
}

TEST(BuildPool, DoubleExcitationStringsAreAllOdd) {
  const auto ex = uccsd_excitations(2, 4);
  const QubitOperator q = jordan_wigner(ex[2].generator).simplify();
  ASSERT_EQ(q.size(), 8u);
  for (const auto& [p, c] : q.terms()) {
    EXPECT_EQ(y_parity(p), YParity::odd) << p.to_dense();
    EXPECT_TRUE(p.y_count() == 1 || p.y_count() == 3);
  }
}

TEST(BuildPool, DeduplicatesAcrossExcitations) {
  const OperatorPool once = build_pool({single_0_to_1()}, 2);
  const OperatorPool twice = build_pool({single_0_to_1(), single_0_to_1()}, 2);
  EXPECT_EQ(once.ops, twice.ops);
}

TEST(BuildPool, H2PoolIsOddDistinctAndDeterministic) {
  const auto ex = uccsd_excitations(2, 4);
  const OperatorPool a = build_pool(ex, 4);
  const OperatorPool b = build_pool(uccsd_excitations(2, 4), 4);
  EXPECT_EQ(a.size(), 12u);
  EXPECT_EQ(a.ops, b.ops);
  EXPECT_EQ(a.provenance, b.provenance);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto& p : a.ops) {
    EXPECT_EQ(y_parity(p), YParity::odd);
    EXPECT_TRUE(seen.insert({p.x_mask(), p.z_mask()}).second);
    bool anticommutes_with_some_z = false;
    for (unsigned k = 0; k < 4; ++k) anticommutes_with_some_z |= !commutes(p, PauliString::single(4, k, 'Z'));
    EXPECT_TRUE(anticommutes_with_some_z);
  }
}

TEST(BuildPool, MgFixturePoolIsOdd) {
  const auto ex = uccsd_excitations(6, 14);
  const OperatorPool pool = build_pool(ex, 14);
  EXPECT_GT(pool.size(), 0u);
  for (const auto& p : pool.ops) EXPECT_EQ(y_parity(p), YParity::odd);
}

TEST(RyRzInitialParams, SeededAndBounded) {
  const auto a = ryrz_initial_params(80, 7);
  EXPECT_EQ(a, ryrz_initial_params(80, 7));
  EXPECT_NE(a, ryrz_initial_params(80, 8));
  ASSERT_EQ(a.size(), 80u);
  for (double v : a) {
    EXPECT_LE(std::abs(v), kRyRzInitialSpread);
  }
  EXPECT_GT(*std::max_element(a.begin(), a.end()), 0.0);
  EXPECT_LT(*std::min_element(a.begin(), a.end()), 0.0);
  for (double v : ryrz_initial_params(5, 1, 0.0)) EXPECT_EQ(v, 0.0);
}

TEST(BuildPool, EmptyPoolThrows) { EXPECT_THROW(build_pool({}, 4), Error); }

}  // namespace
}  // namespace vqepes

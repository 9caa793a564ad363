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

#include "vqepes/pauli.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "vqepes/error.hpp"

namespace vqepes {
namespace {

using testing::kron_pauli;
using testing::random_pauli;

const cplx kI(0.0, 1.0);

TEST(PauliString, DenseAndSparseRoundTrip) {
  const PauliString p = PauliString::from_dense("XIYZ");
  EXPECT_EQ(p.n_qubits(), 4u);
  EXPECT_EQ(p.x_mask(), 0b0101u);
  EXPECT_EQ(p.z_mask(), 0b1100u);
  EXPECT_EQ(p.to_dense(), "XIYZ");
  EXPECT_EQ(p.to_sparse(), "X0Y2Z3");
  EXPECT_EQ(PauliString::from_sparse("X0Y2Z3", 4), p);
  EXPECT_EQ(PauliString::from_sparse("I", 3), PauliString::identity(3));
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_EQ(p.y_count(), 1u);
  EXPECT_EQ(p.at(1), 'I');
}

TEST(PauliString, RejectsMalformedWords) {
  EXPECT_THROW(PauliString::from_dense("XQ"), Error);
  EXPECT_THROW(PauliString::from_sparse("X5", 3), Error);
  EXPECT_THROW(PauliString::from_sparse("X0X0", 3), Error);
}

TEST(Multiply, SingleQubitGroup) {
  const auto r = multiply(PauliString::from_dense("X"), PauliString::from_dense("Y"));
  EXPECT_EQ(r.string.to_dense(), "Z");
  EXPECT_EQ(r.phase.value(), kI);

  const auto zz = multiply(PauliString::from_dense("Z"), PauliString::from_dense("Z"));
  EXPECT_TRUE(zz.string.is_identity());
  EXPECT_EQ(zz.phase.value(), cplx(1.0));
}

TEST(Multiply, TwoQubitProduct) {
  const auto r = multiply(PauliString::from_dense("XZ"), PauliString::from_dense("YY"));
  EXPECT_EQ(r.string.to_dense(), "ZX");
  EXPECT_EQ(r.phase.value(), cplx(1.0));
}

TEST(Multiply, WidthMismatchThrows) {
  EXPECT_THROW(multiply(PauliString::from_dense("X"), PauliString::from_dense("XX")), Error);
  EXPECT_THROW(commutes(PauliString::from_dense("X"), PauliString::from_dense("XX")), Error);
}

TEST(Multiply, MatchesDenseOracleOnRandomPairs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 1 + unsigned(rng() % 6);
    const PauliString p = random_pauli(rng, n);
    const PauliString q = random_pauli(rng, n);
    const auto r = multiply(p, q);
    const Eigen::MatrixXcd lhs = kron_pauli(p.to_dense()) * kron_pauli(q.to_dense());
    const Eigen::MatrixXcd rhs = r.phase.value() * kron_pauli(r.string.to_dense());
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14) << p.to_dense() << " * " << q.to_dense();
  }
}

TEST(Commutes, Examples) {
  EXPECT_FALSE(commutes(PauliString::from_dense("X"), PauliString::from_dense("Z")));
  EXPECT_TRUE(commutes(PauliString::from_dense("XX"), PauliString::from_dense("ZZ")));
  EXPECT_FALSE(commutes(PauliString::from_dense("XI"), PauliString::from_dense("ZZ")));
}

TEST(Commutes, AgreesWithProductsInBothOrders) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned n = 1 + unsigned(rng() % 8);
    const PauliString p = random_pauli(rng, n);
    const PauliString q = random_pauli(rng, n);
    const auto pq = multiply(p, q);
    const auto qp = multiply(q, p);
    EXPECT_EQ(pq.string, qp.string);
    EXPECT_EQ(commutes(p, q), pq.phase == qp.phase);
  }
}

TEST(YParity, Examples) {
  EXPECT_EQ(y_parity(PauliString::from_dense("YII")), YParity::odd);
  EXPECT_EQ(y_parity(PauliString::from_dense("XYY")), YParity::even);
  EXPECT_EQ(y_parity(PauliString::identity(3)), YParity::even);
}

TEST(QubitOperator, SimplifyMergesAndPrunes) {
  QubitOperator op(1);
  op.add(PauliString::from_dense("X"), 1.0);
  op.add(PauliString::from_dense("X"), 2.0);
  const auto s = op.simplify();
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.terms()[0].second, cplx(3.0));

  QubitOperator tiny(1);
  tiny.add(PauliString::from_dense("Z"), 1e-15);
  EXPECT_TRUE(tiny.simplify().empty());
}

TEST(QubitOperator, CanonicalFormIndependentOfInsertionOrder) {
  std::mt19937_64 rng(3);
  std::vector<QubitOperator::Term> terms;
  for (int k = 0; k < 20; ++k) terms.emplace_back(random_pauli(rng, 3), cplx(double(k) - 7.5, 0.25 * k));
  QubitOperator a(3, terms);
  std::shuffle(terms.begin(), terms.end(), rng);
  QubitOperator b(3, terms);
  const auto sa = a.simplify();
  const auto sb = b.simplify();
  ASSERT_EQ(sa.size(), sb.size());
  for (std::size_t k = 0; k < sa.size(); ++k) {
    EXPECT_EQ(sa.terms()[k].first, sb.terms()[k].first);
    EXPECT_NEAR(std::abs(sa.terms()[k].second - sb.terms()[k].second), 0.0, 1e-13);
  }
  EXPECT_LT((to_matrix(a) - to_matrix(sa)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(QubitOperator, SimplifyIsIdempotentAndSorted) {
  std::mt19937_64 rng(5);
  QubitOperator op(4);
  for (int k = 0; k < 40; ++k) op.add(random_pauli(rng, 4), cplx(std::sin(k), std::cos(k)));
  const auto once = op.simplify();
  const auto twice = once.simplify();
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t k = 0; k < once.size(); ++k) {
    EXPECT_EQ(once.terms()[k].first, twice.terms()[k].first);
    EXPECT_EQ(once.terms()[k].second, twice.terms()[k].second);
    if (k > 0) {
      const auto& a = once.terms()[k - 1].first;
      const auto& b = once.terms()[k].first;
      EXPECT_TRUE(a.z_mask() < b.z_mask() || (a.z_mask() == b.z_mask() && a.x_mask() < b.x_mask()));
    }
  }
}

TEST(QubitOperator, ArithmeticMatchesDense) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    QubitOperator a(3);
    QubitOperator b(3);
    for (int k = 0; k < 5; ++k) {
      a.add(random_pauli(rng, 3), cplx(double(rng() % 7) - 3.0, double(rng() % 5) - 2.0));
      b.add(random_pauli(rng, 3), cplx(double(rng() % 7) - 3.0, 0.0));
    }
    const Eigen::MatrixXcd ma = to_matrix(a);
    const Eigen::MatrixXcd mb = to_matrix(b);
    EXPECT_LT((to_matrix(a * b) - ma * mb).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((to_matrix(a + b) - (ma + mb)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((to_matrix(a - b) - (ma - mb)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((to_matrix(commutator(a, b)) - (ma * mb - mb * ma)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((to_matrix(anticommutator(a, b)) - (ma * mb + mb * ma)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((to_matrix(a.adjoint()) - ma.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(QubitOperator, Hermiticity) {
  QubitOperator h(2);
  h.add(PauliString::from_dense("XY"), 0.5);
  h.add(PauliString::from_dense("ZI"), -1.25);
  EXPECT_TRUE(h.is_hermitian());
  h.add(PauliString::from_dense("ZI"), cplx(0.0, 0.1));
  EXPECT_FALSE(h.is_hermitian());
}

TEST(QubitOperator, ConstantTermMergesIdentity) {
  QubitOperator op(2);
  op.add(PauliString::identity(2), 1.5);
  op.add(PauliString::from_dense("XX"), 1.0);
  op.add(PauliString::identity(2), -0.5);
  EXPECT_EQ(op.constant_term(), cplx(1.0));
}

TEST(QubitOperator, TextRoundTrip) {
  QubitOperator op(4);
  op.add(PauliString::from_dense("XIYZ"), 1.5);
  op.add(PauliString::from_dense("ZZII"), cplx(0.5, -1.0));
  const std::string text = op.simplify().to_string();
  EXPECT_NE(text.find("1.5 * XIYZ"), std::string::npos);
  const QubitOperator back = QubitOperator::parse(text);
  EXPECT_LT((to_matrix(back) - to_matrix(op)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(QubitOperator, ParseErrorsCarryLineNumbers) {
  try {
    QubitOperator::parse("1.0 * XX\n2.0 * X?\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    QubitOperator::parse("1.0 * XX\nabc * ZZ\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ToMatrix, Examples) {
  const Eigen::MatrixXcd z = to_matrix(PauliString::from_dense("Z"));
  EXPECT_EQ(z(0, 0), cplx(1.0));
  EXPECT_EQ(z(1, 1), cplx(-1.0));

  const Eigen::MatrixXcd c = to_matrix(QubitOperator::constant(2, 2.5));
  EXPECT_LT((c - 2.5 * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);

  QubitOperator hop(2);
  hop.add(PauliString::from_dense("XX"), 0.5);
  hop.add(PauliString::from_dense("YY"), 0.5);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(1, 2) = expected(2, 1) = 1.0;
  EXPECT_LT((to_matrix(hop) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ToMatrix, LittleEndianKronecker) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const PauliString p = random_pauli(rng, 4);
    EXPECT_LT((to_matrix(p) - kron_pauli(p.to_dense())).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ToMatrix, SizeGuard) {
  EXPECT_THROW(to_matrix(PauliString::identity(13)), SizeError);
}

}  // namespace
}  // namespace vqepes

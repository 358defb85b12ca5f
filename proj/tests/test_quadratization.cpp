// Copyright 2026 The PQCR Authors
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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pqcr/quadratization.hpp"
#include "test_util.hpp"

namespace pqcr {
namespace {

using testing::bits;
using testing::quartic4;

constexpr auto kAlg2 = QuadratizationRule::ConsecutivePairs;
constexpr auto kPc1 = QuadratizationRule::LeadingPair;

bool fortet_ok(const Quadratization& q, const Assignment& x) {
  for (const auto& row : fortet_constraints(q)) {
    double lhs = 0.0;
    for (const auto& [v, a] : row.coefs) lhs += a * x[v];
    if (lhs > row.rhs + 1e-12) return false;
  }
  return true;
}

TEST(Quadratize, Quartic4Trace) {
  const Quadratization q = quadratize(quartic4(), kAlg2);
  EXPECT_EQ(q.n, 4);
  EXPECT_EQ(q.N, 7);
  ASSERT_EQ(q.defs.size(), 3u);
  EXPECT_EQ(q.esets[4], (std::vector<int>{1, 2}));
  EXPECT_EQ(q.esets[5], (std::vector<int>{0, 1}));
  EXPECT_EQ(q.esets[6], (std::vector<int>{2, 3}));
  EXPECT_EQ(q.defs[0], (ProductDef{4, 1, 2}));
  EXPECT_EQ(q.defs[1], (ProductDef{5, 0, 1}));
  EXPECT_EQ(q.defs[2], (ProductDef{6, 2, 3}));
  // 2x1 + 3x2x3 - 2x4x5 - 3x6x7 (1-based)
  ASSERT_EQ(q.terms.size(), 4u);
  EXPECT_TRUE(q.terms[0].linear());
  EXPECT_EQ(q.terms[1].i, 1);
  EXPECT_EQ(q.terms[1].j, 2);
  EXPECT_EQ(q.terms[2].i, 3);
  EXPECT_EQ(q.terms[2].j, 4);
  EXPECT_EQ(q.terms[3].i, 5);
  EXPECT_EQ(q.terms[3].j, 6);
  EXPECT_EQ(fortet_constraints(q).size(), 12u);
}

TEST(Quadratize, FiveVariableMonomialUsesThreeAuxiliaries) {
  const Polynomial p(5, {{1, {0, 1, 2, 3, 4}}});
  const Quadratization q = quadratize(p, kAlg2);
  EXPECT_EQ(q.num_aux(), 3);
  EXPECT_EQ(q.esets[5], (std::vector<int>{0, 1}));
  EXPECT_EQ(q.esets[6], (std::vector<int>{2, 3}));
  EXPECT_EQ(q.esets[7], (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(q.terms[0].i, 4);
  EXPECT_EQ(q.terms[0].j, 7);
}

TEST(Quadratize, LeadingPairChain) {
  const Polynomial p(4, {{1, {0, 1, 2, 3}}});
  const Quadratization q = quadratize(p, kPc1);
  ASSERT_EQ(q.num_aux(), 2);
  EXPECT_EQ(q.esets[4], (std::vector<int>{0, 1}));
  EXPECT_EQ(q.esets[5], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(q.defs[1], (ProductDef{5, 2, 4}));
}

TEST(Quadratize, QuadraticInputIsUnchanged) {
  const Polynomial p(3, {{2, {0, 1}}, {-1, {2}}, {4, {0, 2}}}, 7);
  for (auto rule : {kAlg2, kPc1}) {
    const Quadratization q = quadratize(p, rule);
    EXPECT_EQ(q.N, 3);
    EXPECT_EQ(q.constant, 7);
  }
}

TEST(Quadratize, ReusesAuxiliariesAcrossMonomials) {
  const Polynomial p(4, {{1, {0, 1, 2}}, {1, {0, 1, 3}}, {1, {0, 1}}});
  const Quadratization q = quadratize(p, kAlg2);
  EXPECT_EQ(q.num_aux(), 1);
  EXPECT_EQ(q.terms[0].j, 4);
  EXPECT_EQ(q.terms[1].j, 4);
  EXPECT_EQ(q.terms[2].i, 0);  // quadratic monomials stay as they are
  EXPECT_EQ(q.terms[2].j, 1);
}

TEST(Quadratize, RejectsPlusMinusOne) {
  EXPECT_THROW(quadratize(gen_labs(5, 3), kAlg2), InvalidArgument);
}

TEST(Lift, SatisfiesDefinitionsAndFortet) {
  std::mt19937_64 rng(41);
  for (int r = 0; r < 20; ++r) {
    const auto p = testing::random_polynomial(rng, {8, 4, 20, 5});
    for (auto rule : {kAlg2, kPc1}) {
      const Quadratization q = quadratize(p, rule);
      std::set<std::vector<int>> distinct(q.esets.begin(), q.esets.end());
      EXPECT_EQ(distinct.size(), q.esets.size());
      for (std::uint64_t m = 0; m < 256; ++m) {
        const auto x = lift(q, bits(m, 8));
        for (int i = 0; i < q.N; ++i) {
          bool prod = true;
          for (int v : q.esets[i]) prod = prod && x[v];
          ASSERT_EQ(x[i], prod);
        }
        ASSERT_TRUE(fortet_ok(q, x));
      }
    }
  }
}

TEST(Fortet, BinaryPointsOutsideDefinitionsAreCut) {
  const Quadratization q = quadratize(quartic4(), kAlg2);
  Assignment x = lift(q, {0, 1, 1, 0});
  ASSERT_TRUE(fortet_ok(q, x));
  x[4] ^= 1;
  EXPECT_FALSE(fortet_ok(q, x));
}

TEST(BuildQp, Quartic4Matrices) {
  const Polynomial p = quartic4();
  const QuadraticProgram qp = build_qp(p, quadratize(p, kAlg2));
  EXPECT_EQ(qp.N, 7);
  EXPECT_DOUBLE_EQ(qp.c[0], 2.0);
  EXPECT_DOUBLE_EQ(qp.Q(1, 2), 1.5);
  EXPECT_DOUBLE_EQ(qp.Q(2, 1), 1.5);
  EXPECT_DOUBLE_EQ(qp.Q(3, 4), -1.0);
  EXPECT_DOUBLE_EQ(qp.Q(5, 6), -1.5);
  EXPECT_EQ(qp.Q.diagonal().cwiseAbs().sum(), 0.0);
  EXPECT_TRUE(qp.Q.isApprox(qp.Q.transpose()));
}

TEST(BuildQp, RejectsForeignQuadratization) {
  const Polynomial p = quartic4();
  const Polynomial other(4, {{1, {0, 1, 2, 3}}});
  EXPECT_THROW(build_qp(p, quadratize(other, kAlg2)), InvalidArgument);
}

TEST(BuildQp, LiftedValueEqualsPolynomialExhaustively) {
  std::mt19937_64 rng(43);
  for (int r = 0; r < 30; ++r) {
    testing::RandomSpec spec{10, 4, 30, 10};
    const auto p = testing::random_polynomial(rng, spec) + Polynomial(10, {}, r);
    for (auto rule : {kAlg2, kPc1}) {
      const QuadraticProgram qp = build_qp(p, quadratize(p, rule));
      for (std::uint64_t m = 0; m < 1024; ++m) {
        const auto a = bits(m, 10);
        ASSERT_EQ(qp.value(lift(qp.quad, a)), static_cast<double>(evaluate(p, a)));
      }
    }
  }
}

}  // namespace
}  // namespace pqcr

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

#include "pqcr/reformulation.hpp"
#include "test_util.hpp"

namespace pqcr {
namespace {

using testing::bits;
using testing::quartic4;

QuadraticProgram qp_of(const Polynomial& p,
                       QuadratizationRule rule = QuadratizationRule::ConsecutivePairs) {
  return build_qp(p, quadratize(p, rule));
}

Parameters zero_parameters(const EqualitySet& es) {
  Parameters prm;
  prm.alpha = Eigen::VectorXd::Zero(es.square.size());
  prm.beta = Eigen::VectorXd::Zero(es.subset.size());
  prm.delta = Eigen::VectorXd::Zero(es.product.size());
  prm.lambda = Eigen::VectorXd::Zero(es.unions.size());
  return prm;
}

Parameters random_parameters(const EqualitySet& es, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  Parameters prm = zero_parameters(es);
  for (auto* v : {&prm.alpha, &prm.beta, &prm.delta, &prm.lambda}) {
    for (Eigen::Index i = 0; i < v->size(); ++i) (*v)[i] = d(rng);
  }
  return prm;
}

double sdp_value(const QuadraticProgram& qp, const EqualitySet& es, double tol) {
  SdpOptions o;
  o.tol = tol;
  return solve_sdp(build_sdp(qp, es), o).primal_value;
}

TEST(BuildConvexQp, ZeroParametersKeepQpUpToSafeguard) {
  const QuadraticProgram qp = qp_of(quartic4());
  const EqualitySet es = generate_equalities(qp.quad);
  const ConvexQP c = build_convex_qp(qp, es, zero_parameters(es));
  EXPECT_LT(c.lambda_min, 0.0);
  EXPECT_NEAR(c.mu, -c.lambda_min + kDefaultPsdTol, 1e-15);
  Eigen::MatrixXd expect = qp.Q;
  expect.diagonal().array() += c.mu;
  EXPECT_TRUE(c.Qstar.isApprox(expect));
  EXPECT_TRUE(c.cstar.isApprox((qp.c.array() - c.mu).matrix()));
  EXPECT_EQ(c.provenance, Provenance::PQCR);
}

TEST(BuildConvexQp, UniformAlphaIsTheEigenShift) {
  const QuadraticProgram qp = qp_of(quartic4());
  const EqualitySet es = generate_equalities(qp.quad);
  Parameters prm = zero_parameters(es);
  const double lmin = detail::min_eigenvalue(qp.Q);
  prm.alpha.setConstant(-lmin);
  const ConvexQP a = build_convex_qp(qp, es, prm);
  const ConvexQP b = eigen_convexify(qp);
  EXPECT_TRUE(a.Qstar.isApprox(b.Qstar, 1e-9));
  EXPECT_TRUE(a.cstar.isApprox(b.cstar, 1e-9));
  EXPECT_GE(detail::min_eigenvalue(a.Qstar), -1e-9);
}

TEST(BuildConvexQp, RejectsMismatchedParameters) {
  const QuadraticProgram qp = qp_of(quartic4());
  const EqualitySet es = generate_equalities(qp.quad);
  Parameters prm = zero_parameters(es);
  prm.beta.resize(1);
  EXPECT_THROW(build_convex_qp(qp, es, prm), InvalidArgument);
}

TEST(BuildConvexQp, ValuePreservationForAnyParameters) {
  std::mt19937_64 rng(101);
  for (int r = 0; r < 25; ++r) {
    const auto p = testing::random_polynomial(rng, {9, 4, 25, 10});
    for (auto rule : {QuadratizationRule::ConsecutivePairs,
                      QuadratizationRule::LeadingPair}) {
      const QuadraticProgram qp = qp_of(p, rule);
      const EqualitySet es = generate_equalities(qp.quad);
      const ConvexQP c = build_convex_qp(qp, es, random_parameters(es, rng));
      EXPECT_GE(detail::min_eigenvalue(c.Qstar), -1e-9);
      const double scale = 1.0 + c.Qstar.cwiseAbs().sum() + c.cstar.cwiseAbs().sum();
      for (std::uint64_t m = 0; m < 512; ++m) {
        const auto a = bits(m, 9);
        ASSERT_NEAR(c.value(lift(qp.quad, a)), static_cast<double>(evaluate(p, a)),
                    1e-10 * scale);
      }
    }
  }
}

TEST(EigenConvexify, AlreadyConvexIsIdentity) {
  const QuadraticProgram qp = qp_of(Polynomial(3, {{2, {0}}, {-1, {2}}}));
  const ConvexQP c = eigen_convexify(qp);
  EXPECT_EQ(c.shift, 0.0);
  EXPECT_EQ(c.mu, 0.0);
  EXPECT_TRUE(c.Qstar.isApprox(qp.Q) || c.Qstar.norm() == 0.0);
  EXPECT_EQ(c.provenance, Provenance::EigShift);
}

TEST(EigenConvexify, OffDiagonalPairShiftsByOne) {
  const QuadraticProgram qp = qp_of(Polynomial(2, {{2, {0, 1}}}));
  const ConvexQP c = eigen_convexify(qp);
  EXPECT_NEAR(c.shift, 1.0, 1e-12);
  EXPECT_NEAR(c.Qstar(0, 0), 1.0, 1e-7);
  EXPECT_NEAR(c.cstar[0], -1.0, 1e-7);
}

TEST(ContinuousBound, TrivialCases) {
  const ConvexQP constant = eigen_convexify(qp_of(Polynomial(2, {}, 7)));
  EXPECT_NEAR(continuous_bound(constant), 7.0, 1e-7);
  const ConvexQP lin = eigen_convexify(qp_of(Polynomial(1, {{1, {0}}})));
  EXPECT_NEAR(continuous_bound(lin), 0.0, 1e-7);
  const ConvexQP neg = eigen_convexify(qp_of(Polynomial(1, {{-4, {0}}}, 1)));
  EXPECT_NEAR(continuous_bound(neg), -3.0, 1e-7);
}

TEST(ContinuousBound, SeparableClosedForm) {
  // Diagonal convex objective without auxiliaries: per-coordinate clamp.
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> q(0.1, 3.0), c(-5.0, 5.0);
  for (int r = 0; r < 20; ++r) {
    ConvexQP cqp;
    cqp.n = cqp.N = 5;
    cqp.quad = Quadratization(5);
    cqp.Qstar = Eigen::MatrixXd::Zero(5, 5);
    cqp.cstar.resize(5);
    double expect = 0.0;
    for (int i = 0; i < 5; ++i) {
      cqp.Qstar(i, i) = q(rng);
      cqp.cstar[i] = c(rng);
      const double x = std::clamp(-cqp.cstar[i] / (2 * cqp.Qstar(i, i)), 0.0, 1.0);
      expect += cqp.Qstar(i, i) * x * x + cqp.cstar[i] * x;
    }
    EXPECT_NEAR(continuous_bound(cqp), expect, 1e-7);
  }
}

TEST(ContinuousBound, MatchesSdpValue) {
  std::mt19937_64 rng(107);
  for (int r = 0; r < 12; ++r) {
    const auto p = testing::random_polynomial(rng, {10, 4, 30, 10});
    const QuadraticProgram qp = qp_of(p);
    const EqualitySet es = generate_equalities(qp.quad);
    SdpOptions o;
    o.tol = 1e-6;
    const SdpSolution s = solve_sdp(build_sdp(qp, es), o);
    const ConvexQP c = build_convex_qp(qp, es, extract_parameters(s));
    const double cb = continuous_bound(c);
    EXPECT_NEAR(cb, s.primal_value, 1e-4 * (1 + std::abs(s.primal_value)));
    EXPECT_LE(cb, static_cast<double>(brute_force(p).value) + 1e-6);
  }
}

TEST(ContinuousBound, DominatesEigenShift) {
  std::mt19937_64 rng(109);
  int strict = 0, total = 0;
  for (int r = 0; r < 12; ++r) {
    const auto p = testing::random_polynomial(rng, {10, 4, 30, 10});
    const QuadraticProgram qp = qp_of(p);
    const EqualitySet es = generate_equalities(qp.quad);
    SdpOptions o;
    o.tol = 1e-6;
    const ConvexQP c =
        build_convex_qp(qp, es, extract_parameters(solve_sdp(build_sdp(qp, es), o)));
    const double pqcr = continuous_bound(c);
    const double eig = continuous_bound(eigen_convexify(qp));
    EXPECT_GE(pqcr, eig - 1e-6);
    strict += pqcr > eig + 1e-6;
    ++total;
  }
  EXPECT_GE(strict, total * 9 / 10);
}

TEST(Propagate, Rules) {
  // x5 = x1 x2, x6 = x5 x3 (0-based 4 = 0*1, 5 = 4*2)
  const Polynomial p(4, {{1, {0, 1, 2, 3}}});
  const Quadratization q = quadratize(p, QuadratizationRule::LeadingPair);
  ASSERT_EQ(q.N, 6);
  Fixings f(6, -1);
  f[0] = 0;
  ASSERT_TRUE(propagate(q, f));
  EXPECT_EQ(f[4], 0);
  EXPECT_EQ(f[5], 0);

  f.assign(6, -1);
  f[5] = 1;
  ASSERT_TRUE(propagate(q, f));
  EXPECT_EQ(f, (Fixings{1, 1, 1, -1, 1, 1}));

  f.assign(6, -1);
  f[0] = f[1] = f[2] = 1;
  ASSERT_TRUE(propagate(q, f));
  EXPECT_EQ(f[5], 1);

  f.assign(6, -1);
  f[4] = 0;
  f[0] = 1;
  ASSERT_TRUE(propagate(q, f));
  EXPECT_EQ(f[1], 0);

  f.assign(6, -1);
  f[5] = 1;
  f[2] = 0;
  EXPECT_FALSE(propagate(q, f));
}

TEST(Relaxation, AllFixedEvaluatesDirectly) {
  const QuadraticProgram qp = qp_of(quartic4());
  const ConvexQP c = eigen_convexify(qp);
  for (std::uint64_t m = 0; m < 16; ++m) {
    const auto x = lift(qp.quad, bits(m, 4));
    Fixings f(x.begin(), x.end());
    const Relaxation r = solve_qp_relaxation(c, f);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.value, c.value(x), 1e-9);
    EXPECT_NEAR(r.value, static_cast<double>(evaluate(quartic4(), bits(m, 4))), 1e-9);
  }
}

TEST(Relaxation, ContradictoryFixingsAreInfeasible) {
  const QuadraticProgram qp = qp_of(quartic4());
  const ConvexQP c = eigen_convexify(qp);
  Fixings f(7, -1);
  f[4] = 1;  // x5 = x2 x3
  f[1] = 0;
  f[2] = 1;
  EXPECT_FALSE(solve_qp_relaxation(c, f).feasible);
}

TEST(Relaxation, ChildBoundsDoNotDecrease) {
  std::mt19937_64 rng(113);
  for (int r = 0; r < 8; ++r) {
    const auto p = testing::random_polynomial(rng, {8, 4, 20, 10});
    const QuadraticProgram qp = qp_of(p);
    const ConvexQP c = eigen_convexify(qp);
    const Fixings root(qp.N, -1);
    const double parent = solve_qp_relaxation(c, root).value;
    for (int v = 0; v < qp.n; ++v) {
      for (std::int8_t val : {0, 1}) {
        Fixings f = root;
        f[v] = val;
        ASSERT_TRUE(propagate(qp.quad, f));
        const Relaxation child = solve_qp_relaxation(c, f);
        EXPECT_GE(child.value, parent - 1e-6);
        EXPECT_EQ(child.point[v], val);
      }
    }
  }
}

}  // namespace
}  // namespace pqcr

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

#include <Eigen/Dense>

#include "pqcr/equalities.hpp"
#include "test_util.hpp"

namespace pqcr {
namespace {

using testing::quartic4;

std::vector<int> unite(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

// Rows over the coordinates (x_0..x_{N-1}, X_ij for i <= j).
class RowSpace {
 public:
  explicit RowSpace(int N) : N_(N) {}

  int cols() const { return N_ + N_ * (N_ + 1) / 2; }
  int x(int i) const { return i; }
  int X(int i, int j) const {
    if (i > j) std::swap(i, j);
    return N_ + i * N_ - i * (i - 1) / 2 + (j - i);
  }

  void add(std::vector<std::pair<int, double>> entries) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(cols());
    for (auto [c, v] : entries) r[c] += v;
    rows_.push_back(r);
  }

  void add_equalities(const EqualitySet& es) {
    for (int i : es.square) add({{X(i, i), 1}, {x(i), -1}});
    for (auto [i, j] : es.subset) add({{x(i), 1}, {X(i, j), -1}});
    for (auto [i, j, k] : es.product) add({{x(i), 1}, {X(j, k), -1}});
    for (auto [i, j, k, l] : es.unions) add({{X(i, j), 1}, {X(k, l), -1}});
  }

  Eigen::Index rank() const {
    if (rows_.empty()) return 0;
    Eigen::MatrixXd M(rows_.size(), cols());
    for (std::size_t r = 0; r < rows_.size(); ++r) M.row(r) = rows_[r];
    return Eigen::FullPivLU<Eigen::MatrixXd>(M).rank();
  }

 private:
  int N_;
  std::vector<Eigen::VectorXd> rows_;
};

// Every tuple (i,j,k,l) of the complete union family.
std::vector<std::array<int, 4>> full_union_family(const Quadratization& q) {
  std::vector<std::array<int, 2>> pairs;
  for (int i = 0; i < q.N; ++i) {
    for (int j = i; j < q.N; ++j) pairs.push_back({i, j});
  }
  std::vector<std::array<int, 4>> out;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const auto ua = unite(q.esets[pairs[a][0]], q.esets[pairs[a][1]]);
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      if (unite(q.esets[pairs[b][0]], q.esets[pairs[b][1]]) == ua) {
        out.push_back({pairs[a][0], pairs[a][1], pairs[b][0], pairs[b][1]});
      }
    }
  }
  return out;
}

TEST(Equalities, Quartic4Families) {
  const Quadratization q =
      quadratize(quartic4(), QuadratizationRule::ConsecutivePairs);
  const EqualitySet es = generate_equalities(q);
  EXPECT_EQ(es.square.size(), 7u);
  const std::vector<std::array<int, 2>> subset = {{4, 1}, {4, 2}, {5, 0},
                                                  {5, 1}, {6, 2}, {6, 3}};
  EXPECT_EQ(es.subset, subset);
  const std::vector<std::array<int, 3>> product = {{4, 1, 2}, {5, 0, 1}, {6, 2, 3}};
  EXPECT_EQ(es.product, product);
  EXPECT_EQ(es.t1(), 6u);
  EXPECT_EQ(es.t2(), 3u);
  EXPECT_TRUE(check_null(es, q).empty());
}

TEST(Equalities, NoAuxiliariesMeansSquaresOnly) {
  const Polynomial p(5, {{1, {0, 1}}, {-2, {2, 4}}, {3, {3}}});
  const EqualitySet es =
      generate_equalities(quadratize(p, QuadratizationRule::ConsecutivePairs));
  EXPECT_EQ(es.square.size(), 5u);
  EXPECT_TRUE(es.subset.empty());
  EXPECT_TRUE(es.product.empty());
  EXPECT_TRUE(es.unions.empty());
}

TEST(Equalities, ProductFamilyContainsDefiningTriples) {
  std::mt19937_64 rng(51);
  for (int r = 0; r < 20; ++r) {
    const auto p = testing::random_polynomial(rng, {8, 4, 20, 5});
    for (auto rule : {QuadratizationRule::ConsecutivePairs,
                      QuadratizationRule::LeadingPair}) {
      const Quadratization q = quadratize(p, rule);
      const EqualitySet es = generate_equalities(q);
      for (const auto& d : q.defs) {
        const std::array<int, 3> t{d.var, d.left, d.right};
        EXPECT_NE(std::find(es.product.begin(), es.product.end(), t),
                  es.product.end());
      }
    }
  }
}

TEST(Equalities, SetConditionsHold) {
  std::mt19937_64 rng(53);
  for (int r = 0; r < 20; ++r) {
    const auto p = testing::random_polynomial(rng, {9, 4, 25, 5});
    const Quadratization q = quadratize(p, QuadratizationRule::LeadingPair);
    const EqualitySet es = generate_equalities(q);
    for (auto [i, j] : es.subset) {
      EXPECT_GE(i, q.n);
      EXPECT_LT(q.esets[j].size(), q.esets[i].size());
      EXPECT_TRUE(std::includes(q.esets[i].begin(), q.esets[i].end(),
                                q.esets[j].begin(), q.esets[j].end()));
    }
    for (auto [i, j, k] : es.product) {
      EXPECT_LT(j, k);
      EXPECT_EQ(unite(q.esets[j], q.esets[k]), q.esets[i]);
    }
    for (auto [i, j, k, l] : es.unions) {
      EXPECT_LE(i, j);
      EXPECT_LE(k, l);
      EXPECT_LT((std::array<int, 2>{i, j}), (std::array<int, 2>{k, l}));
      EXPECT_EQ(unite(q.esets[i], q.esets[j]), unite(q.esets[k], q.esets[l]));
    }
  }
}

TEST(Equalities, ChainsSpanTheFullUnionFamily) {
  std::mt19937_64 rng(57);
  for (int r = 0; r < 12; ++r) {
    const auto p = testing::random_polynomial(rng, {7, 4, 12, 5});
    const Quadratization q = quadratize(p, QuadratizationRule::ConsecutivePairs);
    if (q.N > 18) continue;
    const EqualitySet es = generate_equalities(q);
    RowSpace ours(q.N);
    ours.add_equalities(es);
    RowSpace full(q.N);
    full.add_equalities(es);
    for (auto [i, j, k, l] : full_union_family(q)) {
      full.add({{full.X(i, j), 1}, {full.X(k, l), -1}});
    }
    EXPECT_EQ(ours.rank(), full.rank());
  }
}

TEST(Equalities, Deterministic) {
  std::mt19937_64 rng(59);
  const auto p = testing::random_polynomial(rng, {10, 4, 30, 5});
  const Quadratization q = quadratize(p, QuadratizationRule::ConsecutivePairs);
  EXPECT_EQ(generate_equalities(q), generate_equalities(q));
}

TEST(Equalities, UnionCap) {
  std::mt19937_64 rng(61);
  const auto p = testing::random_polynomial(rng, {10, 4, 30, 5});
  const Quadratization q = quadratize(p, QuadratizationRule::ConsecutivePairs);
  const EqualitySet all = generate_equalities(q);
  ASSERT_GT(all.unions.size(), 5u);
  EqualityOptions opts;
  opts.cap4 = 5;
  const EqualitySet capped = generate_equalities(q, opts);
  EXPECT_EQ(capped.unions.size(), 5u);
  EXPECT_TRUE(std::equal(capped.unions.begin(), capped.unions.end(),
                         all.unions.begin()));
  EXPECT_EQ(capped.product, all.product);
}

TEST(CheckNull, RandomQuadratizationsAreNull) {
  std::mt19937_64 rng(67);
  for (int r = 0; r < 30; ++r) {
    const auto p = testing::random_polynomial(rng, {8, 4, 20, 5});
    for (auto rule : {QuadratizationRule::ConsecutivePairs,
                      QuadratizationRule::LeadingPair}) {
      const Quadratization q = quadratize(p, rule);
      EXPECT_TRUE(check_null(generate_equalities(q), q).empty());
    }
  }
}

TEST(CheckNull, ReportsCorruptedTuple) {
  const Quadratization q =
      quadratize(quartic4(), QuadratizationRule::ConsecutivePairs);
  EqualitySet es = generate_equalities(q);
  es.subset.push_back({4, 0});  // E_1 is not inside E_5 = {2,3}
  const auto report = check_null(es, q);
  ASSERT_FALSE(report.empty());
  for (const auto& v : report) {
    EXPECT_EQ(v.family, Family::Subset);
    EXPECT_EQ(v.index, es.subset.size() - 1);
  }
  es.subset.pop_back();
  es.unions.push_back({0, 1, 2, 3});
  EXPECT_FALSE(check_null(es, q).empty());
}

TEST(CheckNull, SquaresAloneAreNull) {
  const Quadratization q =
      quadratize(quartic4(), QuadratizationRule::LeadingPair);
  EqualitySet es;
  for (int i = 0; i < q.N; ++i) es.square.push_back(i);
  EXPECT_TRUE(check_null(es, q).empty());
}

TEST(CheckNull, EnforcesCap) {
  const Polynomial p(16, {{1, {0, 1, 2}}});
  const Quadratization q = quadratize(p, QuadratizationRule::LeadingPair);
  EXPECT_THROW(check_null(generate_equalities(q), q), InvalidArgument);
}

}  // namespace
}  // namespace pqcr

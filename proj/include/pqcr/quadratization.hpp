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

#ifndef PQCR_QUADRATIZATION_HPP_
#define PQCR_QUADRATIZATION_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pqcr/error.hpp"
#include "pqcr/polynomial.hpp"

namespace pqcr {

enum class QuadratizationRule {
  // Each round replaces the consecutive pairs (1,2), (3,4), ... of the sorted
  // monomial; an odd trailing variable carries over. x1x2x3x4x5 becomes
  // ((x1x2)(x3x4)) x5 with three auxiliaries.
  ConsecutivePairs,
  // Each round replaces only the leading pair: x1x2x3x4 -> ((x1x2)x3) x4.
  LeadingPair,
};

// Auxiliary variable `var` stands for the product x_left * x_right.
struct ProductDef {
  int var = 0;
  int left = 0;
  int right = 0;

  friend bool operator==(const ProductDef&, const ProductDef&) = default;
};

// A rewritten monomial over the extended variables: coef * x_i (j < 0) or
// coef * x_i * x_j with i < j.
struct QuadTerm {
  Coef coef = 0;
  int i = 0;
  int j = -1;

  bool linear() const { return j < 0; }
};

// Extended variable set I ∪ J together with the E-set of every variable: the
// original indices whose product the variable represents. Originals are
// 0..n-1 with E_i = {i}; auxiliaries are n..N-1, one ProductDef each, and no
// two variables share an E-set.
struct Quadratization {
  int n = 0;
  int N = 0;
  std::vector<std::vector<int>> esets;
  std::vector<ProductDef> defs;  // defs[k].var == n + k
  std::vector<QuadTerm> terms;   // one per source monomial, same order
  Coef constant = 0;
  std::map<std::vector<int>, int> by_eset;

  explicit Quadratization(int num_original = 0) : n(num_original), N(num_original) {
    for (int i = 0; i < n; ++i) {
      esets.push_back({i});
      by_eset.emplace(std::vector<int>{i}, i);
    }
  }

  int num_aux() const { return N - n; }

  // Variable representing the product of the given originals, -1 if none.
  int find(const std::vector<int>& eset) const {
    auto it = by_eset.find(eset);
    return it == by_eset.end() ? -1 : it->second;
  }

  // Returns the variable for x_a * x_b, creating it when no variable with
  // E_a ∪ E_b exists yet.
  int product(int a, int b) {
    std::vector<int> u;
    std::set_union(esets[a].begin(), esets[a].end(), esets[b].begin(),
                   esets[b].end(), std::back_inserter(u));
    if (int existing = find(u); existing >= 0) return existing;
    const int var = N++;
    esets.push_back(u);
    by_eset.emplace(std::move(u), var);
    defs.push_back({var, std::min(a, b), std::max(a, b)});
    return var;
  }
};

inline Quadratization quadratize(const Polynomial& p, QuadratizationRule rule) {
  if (p.domain() != Domain::ZeroOne) {
    throw InvalidArgument("quadratize expects a 0/1 polynomial");
  }
  Quadratization q(p.num_vars());
  q.constant = p.constant();
  for (const auto& t : p.terms()) {
    std::vector<int> v = t.vars;
    while (v.size() > 2) {
      std::vector<int> next;
      if (rule == QuadratizationRule::ConsecutivePairs) {
        const std::size_t pairs = v.size() / 2;
        for (std::size_t l = 0; l < pairs; ++l) {
          next.push_back(q.product(v[2 * l], v[2 * l + 1]));
        }
        if (v.size() % 2) next.push_back(v.back());
      } else {
        next.push_back(q.product(v[0], v[1]));
        next.insert(next.end(), v.begin() + 2, v.end());
      }
      v = std::move(next);
    }
    if (v.size() == 1) {
      q.terms.push_back({t.coef, v[0], -1});
    } else {
      q.terms.push_back({t.coef, std::min(v[0], v[1]), std::max(v[0], v[1])});
    }
  }
  return q;
}

// x_i = prod_{j in E_i} a_j for every extended variable.
inline Assignment lift(const Quadratization& q, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(q.n)) {
    throw InvalidArgument("lift: assignment size does not match n");
  }
  Assignment x(q.N, 0);
  std::copy(a.begin(), a.end(), x.begin());
  for (const auto& d : q.defs) x[d.var] = x[d.left] & x[d.right];
  return x;
}

// sum_k coefs_k * x_{var_k} <= rhs
struct LinearInequality {
  std::vector<std::pair<int, double>> coefs;
  double rhs = 0.0;
};

// Four rows per product definition x_i = x_j x_k:
//   x_i - x_j <= 0,  x_i - x_k <= 0,  -x_i + x_j + x_k <= 1,  -x_i <= 0.
inline std::vector<LinearInequality> fortet_constraints(const Quadratization& q) {
  std::vector<LinearInequality> rows;
  rows.reserve(4 * q.defs.size());
  for (const auto& d : q.defs) {
    rows.push_back({{{d.var, 1.0}, {d.left, -1.0}}, 0.0});
    rows.push_back({{{d.var, 1.0}, {d.right, -1.0}}, 0.0});
    rows.push_back({{{d.var, -1.0}, {d.left, 1.0}, {d.right, 1.0}}, 1.0});
    rows.push_back({{{d.var, -1.0}}, 0.0});
  }
  return rows;
}

// min x^T Q x + c^T x + constant over the binary points satisfying the
// product definitions. Q is symmetric with a zero diagonal: a product
// coef * x_i x_j puts coef/2 at (i,j) and (j,i).
struct QuadraticProgram {
  int n = 0;
  int N = 0;
  Eigen::MatrixXd Q;
  Eigen::VectorXd c;
  double constant = 0.0;
  Quadratization quad;

  double value(const Eigen::VectorXd& x) const {
    return x.dot(Q * x) + c.dot(x) + constant;
  }

  double value(const Assignment& x) const {
    Eigen::VectorXd v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i];
    return value(v);
  }
};

inline QuadraticProgram build_qp(const Polynomial& p, const Quadratization& q) {
  if (q.n != p.num_vars() || q.terms.size() != p.num_terms()) {
    throw InvalidArgument("build_qp: quadratization was built from another "
                          "polynomial");
  }
  QuadraticProgram qp;
  qp.n = q.n;
  qp.N = q.N;
  qp.Q = Eigen::MatrixXd::Zero(q.N, q.N);
  qp.c = Eigen::VectorXd::Zero(q.N);
  qp.constant = static_cast<double>(q.constant);
  for (std::size_t k = 0; k < q.terms.size(); ++k) {
    const auto& t = q.terms[k];
    const auto& source = p.terms()[k];
    std::vector<int> covered = q.esets[t.i];
    if (!t.linear()) {
      std::vector<int> u;
      std::set_union(covered.begin(), covered.end(), q.esets[t.j].begin(),
                     q.esets[t.j].end(), std::back_inserter(u));
      covered = std::move(u);
    }
    if (covered != source.vars || t.coef != source.coef) {
      throw InvalidArgument("build_qp: rewritten term " + std::to_string(k) +
                            " does not reproduce its monomial");
    }
    if (t.linear()) {
      qp.c[t.i] += static_cast<double>(t.coef);
    } else {
      qp.Q(t.i, t.j) += 0.5 * static_cast<double>(t.coef);
      qp.Q(t.j, t.i) += 0.5 * static_cast<double>(t.coef);
    }
  }
  qp.quad = q;
  return qp;
}

}  // namespace pqcr

#endif  // PQCR_QUADRATIZATION_HPP_

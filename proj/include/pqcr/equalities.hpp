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

// Quadratic functions that vanish on every binary point consistent with a
// quadratization. They are the directions along which the objective's
// Hessian may be perturbed without changing its values on the feasible set.

#ifndef PQCR_EQUALITIES_HPP_
#define PQCR_EQUALITIES_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqcr/error.hpp"
#include "pqcr/quadratization.hpp"

namespace pqcr {

enum class Family { Square, Subset, Product, Union };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Square: return "square";
    case Family::Subset: return "subset";
    case Family::Product: return "product";
    case Family::Union: return "union";
  }
  return "?";
}

// Four families of null functions, indices into I ∪ J:
//   square  i:        x_i^2 - x_i          every variable
//   subset  (i,j):    x_i - x_i x_j        i aux, E_j ⊊ E_i
//   product (i,j,k):  x_i - x_j x_k        i aux, j < k, j,k != i,
//                                          E_i = E_j ∪ E_k
//   union   (i,j,k,l): x_i x_j - x_k x_l   E_i ∪ E_j = E_k ∪ E_l, i <= j,
//                                          k <= l, (i,j) < (k,l)
struct EqualitySet {
  std::vector<int> square;
  std::vector<std::array<int, 2>> subset;
  std::vector<std::array<int, 3>> product;
  std::vector<std::array<int, 4>> unions;

  std::size_t t1() const { return subset.size(); }
  std::size_t t2() const { return product.size(); }
  std::size_t t3() const { return unions.size(); }
  std::size_t size() const {
    return square.size() + subset.size() + product.size() + unions.size();
  }

  friend bool operator==(const EqualitySet&, const EqualitySet&) = default;
};

struct EqualityOptions {
  // Upper bound on the number of union equalities. Unset: unlimited up to
  // N = 150 extended variables, kDefaultUnionCap beyond.
  std::optional<std::size_t> cap4;

  static constexpr std::size_t kDefaultUnionCap = 20000;
  static constexpr int kUnlimitedUpToN = 150;
};

namespace detail {

inline bool strict_subset(const std::vector<int>& small,
                          const std::vector<int>& big) {
  return small.size() < big.size() &&
         std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::vector<int> set_union(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> u;
  u.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

}  // namespace detail

// The union family is not enumerated in full. Variable pairs {i,j} (i == j
// allowed) are grouped by E_i ∪ E_j; a group whose union is represented by a
// variable t is already tied to x_t through the other families, and every
// other group with |U| >= 3 contributes a chain linking consecutive pairs.
// The chain spans the same affine conditions on the moment matrix as the
// full quadratic-size family.
inline EqualitySet generate_equalities(const Quadratization& q,
                                       const EqualityOptions& opts = {}) {
  EqualitySet es;
  const int N = q.N;
  for (int i = 0; i < N; ++i) es.square.push_back(i);

  for (int i = q.n; i < N; ++i) {
    std::vector<int> subs;
    for (int j = 0; j < N; ++j) {
      if (j != i && detail::strict_subset(q.esets[j], q.esets[i])) {
        es.subset.push_back({i, j});
        subs.push_back(j);
      }
    }
    for (std::size_t a = 0; a < subs.size(); ++a) {
      for (std::size_t b = a + 1; b < subs.size(); ++b) {
        if (q.esets[subs[a]].size() + q.esets[subs[b]].size() <
            q.esets[i].size()) {
          continue;
        }
        if (detail::set_union(q.esets[subs[a]], q.esets[subs[b]]) ==
            q.esets[i]) {
          es.product.push_back({i, subs[a], subs[b]});
        }
      }
    }
  }

  std::size_t cap = SIZE_MAX;
  if (opts.cap4) {
    cap = *opts.cap4;
  } else if (N > EqualityOptions::kUnlimitedUpToN) {
    cap = EqualityOptions::kDefaultUnionCap;
  }

  struct BySizeThenLex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
  };
  std::map<std::vector<int>, std::vector<std::array<int, 2>>, BySizeThenLex>
      groups;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      auto u = detail::set_union(q.esets[i], q.esets[j]);
      if (u.size() < 3) continue;
      groups[std::move(u)].push_back({i, j});
    }
  }
  for (const auto& [u, pairs] : groups) {
    if (es.unions.size() >= cap) break;
    if (pairs.size() < 2 || q.find(u) >= 0) continue;
    for (std::size_t k = 0; k + 1 < pairs.size() && es.unions.size() < cap;
         ++k) {
      es.unions.push_back(
          {pairs[k][0], pairs[k][1], pairs[k + 1][0], pairs[k + 1][1]});
    }
  }
  return es;
}

struct NullViolation {
  Family family;
  std::size_t index;  // position within its family
  Assignment point;   // original-variable assignment that was lifted
  double value;
};

// Evaluates every equality at the lift of every binary assignment of the
// original variables and reports the nonzero ones.
inline std::vector<NullViolation> check_null(const EqualitySet& es,
                                             const Quadratization& q,
                                             int max_n = 14) {
  if (q.n > max_n) {
    throw InvalidArgument("check_null: n=" + std::to_string(q.n) +
                          " exceeds the enumeration cap " +
                          std::to_string(max_n));
  }
  auto in_range = [&](int v) { return v >= 0 && v < q.N; };
  std::vector<NullViolation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q.n); ++mask) {
    Assignment a(q.n);
    for (int i = 0; i < q.n; ++i) a[i] = (mask >> i) & 1;
    const Assignment x = lift(q, a);
    auto val = [&](int v) -> int { return in_range(v) ? x[v] : -1000; };
    for (std::size_t k = 0; k < es.square.size(); ++k) {
      const int xi = val(es.square[k]);
      if (xi * xi - xi != 0) {
        out.push_back({Family::Square, k, a, double(xi * xi - xi)});
      }
    }
    for (std::size_t k = 0; k < es.subset.size(); ++k) {
      const auto [i, j] = es.subset[k];
      const int r = val(i) - val(i) * val(j);
      if (r != 0) out.push_back({Family::Subset, k, a, double(r)});
    }
    for (std::size_t k = 0; k < es.product.size(); ++k) {
      const auto [i, j, l] = es.product[k];
      const int r = val(i) - val(j) * val(l);
      if (r != 0) out.push_back({Family::Product, k, a, double(r)});
    }
    for (std::size_t k = 0; k < es.unions.size(); ++k) {
      const auto [i, j, k2, l] = es.unions[k];
      const int r = val(i) * val(j) - val(k2) * val(l);
      if (r != 0) out.push_back({Family::Union, k, a, double(r)});
    }
  }
  return out;
}

}  // namespace pqcr

#endif  // PQCR_EQUALITIES_HPP_

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

// Sparse multilinear polynomials over binary variables, the LABS instance
// generator, the ±1 -> 0/1 change of variables and an exhaustive oracle.
//
// Variables are 0-based in memory. Instance files and JSON are 1-based.

#ifndef PQCR_POLYNOMIAL_HPP_
#define PQCR_POLYNOMIAL_HPP_

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pqcr/error.hpp"

namespace pqcr {

using Coef = std::int64_t;

// Bit vector over the polynomial's variables. For a PlusMinusOne polynomial a
// 0 bit stands for -1 and a 1 bit for +1.
using Assignment = std::vector<std::uint8_t>;

enum class Domain { ZeroOne, PlusMinusOne };

struct Monomial {
  Coef coef = 0;
  std::vector<int> vars;  // strictly increasing, nonempty

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

namespace detail {

inline Coef checked_add(Coef a, Coef b) {
  Coef r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw InvalidArgument("coefficient overflow");
  }
  return r;
}

inline Coef checked_mul(Coef a, Coef b) {
  Coef r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw InvalidArgument("coefficient overflow");
  }
  return r;
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

}  // namespace detail

// f(x) = constant + sum_p coef_p * prod_{i in vars_p} x_i.
//
// Construction sorts each support, merges like terms (keeping the position of
// the first occurrence) and drops zero coefficients. Empty supports are folded
// into the constant.
class Polynomial {
 public:
  Polynomial() = default;

  Polynomial(int num_vars, std::vector<Monomial> terms, Coef constant = 0,
             Domain domain = Domain::ZeroOne)
      : num_vars_(num_vars), constant_(constant), domain_(domain) {
    if (num_vars < 0) throw InvalidArgument("negative variable count");
    std::unordered_map<std::vector<int>, std::size_t, detail::VectorHash> seen;
    for (auto& t : terms) {
      std::sort(t.vars.begin(), t.vars.end());
      if (std::adjacent_find(t.vars.begin(), t.vars.end()) != t.vars.end()) {
        throw InvalidArgument("duplicate variable index in monomial");
      }
      for (int v : t.vars) {
        if (v < 0 || v >= num_vars) {
          throw InvalidArgument("variable index " + std::to_string(v + 1) +
                                " out of range 1.." +
                                std::to_string(num_vars));
        }
      }
      if (t.vars.empty()) {
        constant_ = detail::checked_add(constant_, t.coef);
        continue;
      }
      auto [it, inserted] = seen.try_emplace(t.vars, terms_.size());
      if (inserted) {
        terms_.push_back(std::move(t));
      } else {
        terms_[it->second].coef =
            detail::checked_add(terms_[it->second].coef, t.coef);
      }
    }
    std::erase_if(terms_, [](const Monomial& t) { return t.coef == 0; });
  }

  int num_vars() const { return num_vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  Coef constant() const { return constant_; }
  Domain domain() const { return domain_; }

  int degree() const {
    std::size_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.vars.size());
    return static_cast<int>(d);
  }

  // Same polynomial with terms in ascending lexicographic support order.
  Polynomial sorted() const {
    Polynomial out = *this;
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Monomial& a, const Monomial& b) { return a.vars < b.vars; });
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.domain_ != b.domain_) throw InvalidArgument("domain mismatch");
    std::vector<Monomial> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return Polynomial(std::max(a.num_vars_, b.num_vars_), std::move(terms),
                      detail::checked_add(a.constant_, b.constant_), a.domain_);
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int num_vars_ = 0;
  std::vector<Monomial> terms_;
  Coef constant_ = 0;
  Domain domain_ = Domain::ZeroOne;
};

inline Coef evaluate(const Polynomial& p, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(p.num_vars())) {
    throw InvalidArgument("assignment has " + std::to_string(a.size()) +
                          " entries, polynomial has " +
                          std::to_string(p.num_vars()) + " variables");
  }
  Coef value = p.constant();
  for (const auto& t : p.terms()) {
    if (p.domain() == Domain::ZeroOne) {
      bool on = std::all_of(t.vars.begin(), t.vars.end(),
                            [&](int v) { return a[v] != 0; });
      if (on) value = detail::checked_add(value, t.coef);
    } else {
      int negatives = 0;
      for (int v : t.vars) negatives += a[v] == 0;
      value = detail::checked_add(value, (negatives % 2) ? -t.coef : t.coef);
    }
  }
  return value;
}

// ---------------------------------------------------------------------------
// Instance text format
//
//   n <n> const <c> [domain 01|pm1]
//   <coef> <i1> <i2> ... <ik>
//   ...
//
// Indices are 1-based. A bare "<n>" header is accepted (constant 0). Blank
// lines and lines starting with '#' are ignored.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

inline Polynomial parse_instance(std::string_view text) {
  int n = -1;
  Coef constant = 0;
  Domain domain = Domain::ZeroOne;
  std::vector<Monomial> terms;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;

    if (n < 0) {
      if (tok.size() == 1) {
        if (!detail::parse_int(tok[0], n) || n < 0) {
          throw ParseError(lineno, "bad variable count '" +
                                       std::string(tok[0]) + "'");
        }
        continue;
      }
      for (std::size_t k = 0; k < tok.size(); k += 2) {
        if (k + 1 >= tok.size()) {
          throw ParseError(lineno, "header key '" + std::string(tok[k]) +
                                       "' has no value");
        }
        std::string_view key = tok[k], val = tok[k + 1];
        if (key == "n") {
          if (!detail::parse_int(val, n) || n < 0) {
            throw ParseError(lineno, "bad variable count '" +
                                         std::string(val) + "'");
          }
        } else if (key == "const") {
          if (!detail::parse_int(val, constant)) {
            throw ParseError(lineno, "bad constant '" + std::string(val) + "'");
          }
        } else if (key == "domain") {
          if (val == "01") {
            domain = Domain::ZeroOne;
          } else if (val == "pm1") {
            domain = Domain::PlusMinusOne;
          } else {
            throw ParseError(lineno, "unknown domain '" + std::string(val) +
                                         "' (expected 01 or pm1)");
          }
        } else {
          throw ParseError(lineno, "unknown header key '" + std::string(key) +
                                       "'");
        }
      }
      if (n < 0) throw ParseError(lineno, "header does not set n");
      continue;
    }

    Monomial m;
    if (!detail::parse_int(tok[0], m.coef)) {
      throw ParseError(lineno, "bad coefficient '" + std::string(tok[0]) + "'");
    }
    for (std::size_t k = 1; k < tok.size(); ++k) {
      int idx = 0;
      if (!detail::parse_int(tok[k], idx)) {
        throw ParseError(lineno, "bad variable index '" + std::string(tok[k]) +
                                     "'");
      }
      if (idx < 1 || idx > n) {
        throw ParseError(lineno, "variable index " + std::to_string(idx) +
                                     " out of range 1.." + std::to_string(n));
      }
      m.vars.push_back(idx - 1);
    }
    auto sorted = m.vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(lineno, "duplicate variable index in monomial");
    }
    terms.push_back(std::move(m));
  }
  if (n < 0) throw ParseError(lineno, "missing header");
  return Polynomial(n, std::move(terms), constant, domain);
}

inline std::string format_instance(const Polynomial& p) {
  std::ostringstream os;
  os << "n " << p.num_vars() << " const " << p.constant();
  if (p.domain() == Domain::PlusMinusOne) os << " domain pm1";
  os << '\n';
  for (const auto& t : p.terms()) {
    os << t.coef;
    for (int v : t.vars) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LABS instances

enum class LabsTruncation {
  // Keep the products s_i s_{i+k} s_j s_{j+k} whose four indices lie within a
  // window of n0 consecutive positions. This is the tunable-range Bernasconi
  // model of the published b.n.n0 benchmark instances.
  InteractionRange,
  // Keep the lags k = 1..n0-1 in full: sum_{k<n0} C_k(S)^2.
  Lags,
};

// Expansion of the (truncated) sum of squared aperiodic autocorrelations
// C_k(S) = sum_{i} s_i s_{i+k} over S in {-1,1}^n, reduced with s_i^2 = 1.
// Terms come out in ascending lexicographic support order.
inline Polynomial gen_labs(int n, int n0,
                           LabsTruncation trunc = LabsTruncation::InteractionRange) {
  if (n0 < 2 || n0 > n) {
    throw InvalidArgument("gen_labs needs 2 <= n0 <= n (got n=" +
                          std::to_string(n) + ", n0=" + std::to_string(n0) +
                          ")");
  }
  std::map<std::vector<int>, Coef> acc;
  Coef constant = 0;
  const int max_lag = trunc == LabsTruncation::Lags ? n0 - 1 : n - 1;
  for (int k = 1; k <= max_lag; ++k) {
    for (int i = 0; i + k < n; ++i) {
      for (int j = 0; j + k < n; ++j) {
        if (trunc == LabsTruncation::InteractionRange &&
            std::max(i, j) + k - std::min(i, j) >= n0) {
          continue;
        }
        if (i == j) {
          ++constant;
          continue;
        }
        // Symmetric difference of {i, i+k} and {j, j+k}.
        int idx[4] = {i, i + k, j, j + k};
        std::sort(idx, idx + 4);
        std::vector<int> support;
        for (int a = 0; a < 4;) {
          if (a + 1 < 4 && idx[a] == idx[a + 1]) {
            a += 2;
          } else {
            support.push_back(idx[a++]);
          }
        }
        if (support.empty()) {
          ++constant;
        } else {
          ++acc[support];
        }
      }
    }
  }
  std::vector<Monomial> terms;
  for (auto& [support, c] : acc) {
    if (c != 0) terms.push_back({c, support});
  }
  return Polynomial(n, std::move(terms), constant, Domain::PlusMinusOne);
}

// s_i = 2 x_i - 1. Evaluation is preserved bit for bit: evaluate(result, b) ==
// evaluate(p, b) for every bit vector b.
inline Polynomial to_binary(const Polynomial& p) {
  if (p.domain() != Domain::PlusMinusOne) {
    throw InvalidArgument("to_binary expects a ±1 polynomial");
  }
  std::map<std::vector<int>, Coef> acc;
  Coef constant = p.constant();
  for (const auto& t : p.terms()) {
    const auto& s = t.vars;
    const std::size_t k = s.size();
    if (k >= 62) throw InvalidArgument("monomial degree too large");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      const int chosen = std::popcount(mask);
      Coef c = detail::checked_mul(t.coef, Coef{1} << chosen);
      if ((k - chosen) % 2) c = -c;
      if (mask == 0) {
        constant = detail::checked_add(constant, c);
        continue;
      }
      std::vector<int> sub;
      sub.reserve(chosen);
      for (std::size_t b = 0; b < k; ++b) {
        if (mask >> b & 1) sub.push_back(s[b]);
      }
      auto& slot = acc[sub];
      slot = detail::checked_add(slot, c);
    }
  }
  std::vector<Monomial> terms;
  for (auto& [support, c] : acc) {
    if (c != 0) terms.push_back({c, support});
  }
  return Polynomial(p.num_vars(), std::move(terms), constant, Domain::ZeroOne);
}

struct SymmetryFix {
  Polynomial reduced;
  int fixed_index = -1;  // 0-based position in the original polynomial

  // Reinserts the fixed variable (value 0) into an assignment of `reduced`.
  Assignment expand(const Assignment& a) const {
    Assignment out = a;
    out.insert(out.begin() + fixed_index, std::uint8_t{0});
    return out;
  }
};

// Fixes to 0 the variable contained in the most monomials (ties: smallest
// index), drops the monomials containing it and renumbers the rest densely.
inline SymmetryFix fix_symmetry(const Polynomial& p) {
  if (p.domain() != Domain::ZeroOne) {
    throw InvalidArgument("fix_symmetry expects a 0/1 polynomial");
  }
  if (p.num_vars() < 1) throw InvalidArgument("no variable to fix");
  std::vector<std::size_t> count(p.num_vars(), 0);
  for (const auto& t : p.terms()) {
    for (int v : t.vars) ++count[v];
  }
  const int fixed = static_cast<int>(
      std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<Monomial> terms;
  for (const auto& t : p.terms()) {
    if (std::binary_search(t.vars.begin(), t.vars.end(), fixed)) continue;
    Monomial m{t.coef, t.vars};
    for (int& v : m.vars) {
      if (v > fixed) --v;
    }
    terms.push_back(std::move(m));
  }
  return {Polynomial(p.num_vars() - 1, std::move(terms), p.constant(),
                     Domain::ZeroOne),
          fixed};
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

struct BruteForceOptions {
  int max_vars = 26;
  int workers = 1;
};

struct BruteForceResult {
  Coef value = 0;
  Assignment argmin;  // lexicographically smallest minimizer
};

namespace detail {

// Gray-code walk over the low `free_bits` variables with the high variables
// fixed by `prefix`. Variable i sits at mask bit (n - 1 - i), so comparing
// masks numerically compares assignments lexicographically.
inline std::pair<Coef, std::uint64_t> enumerate_block(
    const Polynomial& p, const std::vector<std::vector<int>>& incidence,
    std::uint64_t prefix, int free_bits) {
  const int n = p.num_vars();
  const auto& terms = p.terms();
  std::vector<int> ones(terms.size(), 0);
  Coef value = p.constant();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (int v : terms[t].vars) ones[t] += (prefix >> (n - 1 - v)) & 1;
    if (ones[t] == static_cast<int>(terms[t].vars.size())) {
      value += terms[t].coef;
    }
  }
  Coef best = value;
  std::uint64_t best_mask = prefix;
  const std::uint64_t steps = std::uint64_t{1} << free_bits;
  for (std::uint64_t s = 1; s < steps; ++s) {
    const int bit = std::countr_zero(s);
    const std::uint64_t gray = s ^ (s >> 1);
    const bool now_set = (gray >> bit) & 1;
    const int var = n - 1 - bit;
    for (int t : incidence[var]) {
      const int size = static_cast<int>(terms[t].vars.size());
      if (now_set) {
        if (++ones[t] == size) value += terms[t].coef;
      } else {
        if (ones[t]-- == size) value -= terms[t].coef;
      }
    }
    const std::uint64_t mask = prefix | gray;
    if (value < best || (value == best && mask < best_mask)) {
      best = value;
      best_mask = mask;
    }
  }
  return {best, best_mask};
}

}  // namespace detail

inline BruteForceResult brute_force(const Polynomial& poly,
                                    const BruteForceOptions& opts = {}) {
  if (poly.num_vars() > opts.max_vars || poly.num_vars() > 62) {
    throw InvalidArgument("brute_force: " + std::to_string(poly.num_vars()) +
                          " variables exceed the cap of " +
                          std::to_string(opts.max_vars));
  }
  const Polynomial p =
      poly.domain() == Domain::PlusMinusOne ? to_binary(poly) : poly;
  const int n = p.num_vars();
  std::vector<std::vector<int>> incidence(n);
  for (std::size_t t = 0; t < p.terms().size(); ++t) {
    for (int v : p.terms()[t].vars) incidence[v].push_back(static_cast<int>(t));
  }

  const int workers = std::max(1, opts.workers);
  int prefix_bits = 0;
  while ((1 << prefix_bits) < workers && prefix_bits < n &&
         prefix_bits < 10) {
    ++prefix_bits;
  }
  const int free_bits = n - prefix_bits;
  const std::uint64_t blocks = std::uint64_t{1} << prefix_bits;

  std::vector<std::pair<Coef, std::uint64_t>> partial(
      blocks, {std::numeric_limits<Coef>::max(), 0});
  auto run = [&](std::size_t w) {
    for (std::uint64_t b = w; b < blocks; b += workers) {
      partial[b] = detail::enumerate_block(p, incidence, b << free_bits,
                                           free_bits);
    }
  };
  if (workers == 1 || blocks == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  auto best = partial.front();
  for (const auto& r : partial) {
    if (r.first < best.first ||
        (r.first == best.first && r.second < best.second)) {
      best = r;
    }
  }
  BruteForceResult out;
  out.value = best.first;
  out.argmin.resize(n);
  for (int i = 0; i < n; ++i) out.argmin[i] = (best.second >> (n - 1 - i)) & 1;
  return out;
}

}  // namespace pqcr

#endif  // PQCR_POLYNOMIAL_HPP_

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

#ifndef PQCR_BNB_HPP_
#define PQCR_BNB_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pqcr/equalities.hpp"
#include "pqcr/error.hpp"
#include "pqcr/polynomial.hpp"
#include "pqcr/quadratization.hpp"
#include "pqcr/reformulation.hpp"
#include "pqcr/sdp.hpp"

namespace pqcr {

struct Node {
  Fixings fixings;
  double lower_bound = -std::numeric_limits<double>::infinity();
  int depth = 0;
  Eigen::VectorXd point;
};

enum class BnBStatus { Optimal, TimeLimit };

inline const char* bnb_status_name(BnBStatus s) {
  return s == BnBStatus::Optimal ? "optimal" : "time_limit";
}

// |bkn - lb| / |bkn| * 100, or |bkn - lb| with absolute = true when bkn = 0.
struct Gap {
  double value = 0.0;
  bool absolute = false;
};

inline Gap gap_percent(double bkn, double lb) {
  if (bkn == 0.0) return {std::abs(lb), true};
  return {std::abs(bkn - lb) / std::abs(bkn) * 100.0, false};
}

struct BnBResult {
  BnBStatus status = BnBStatus::Optimal;
  double best_value = 0.0;
  Assignment best_assignment;
  double lb_root = 0.0;
  double lb_final = 0.0;
  Gap gap_root;
  Gap gap_final;
  std::size_t nodes = 0;  // relaxations solved below the root
  double t_sdp_s = 0.0;
  double t_total_s = 0.0;
  std::string method;
  // Filled by the pipeline.
  int n = 0;
  int N = 0;
  std::optional<double> sdp_value;
  std::optional<SdpStatus> sdp_status;
  double mu = 0.0;
};

struct BnBOptions {
  double qp_tol = 1e-9;
  // Objective values on binaries are integers: prune nodes whose bound
  // exceeds best - 1.
  bool integer_objective = true;
  double abs_tol = 1e-6;
  double time_limit_s = std::numeric_limits<double>::infinity();
  bool local_search = true;
  std::ostream* log = nullptr;
};

namespace detail {

// 1-flip descent on f, first improvement, until a local minimum.
class LocalSearch {
 public:
  explicit LocalSearch(const Polynomial& p) : p_(p), incidence_(p.num_vars()) {
    for (std::size_t t = 0; t < p.terms().size(); ++t) {
      for (int v : p.terms()[t].vars) incidence_[v].push_back(t);
    }
  }

  Coef descend(Assignment& a) const {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < p_.num_vars(); ++v) {
        if (delta(a, v) < 0) {
          a[v] ^= 1;
          improved = true;
        }
      }
    }
    return evaluate(p_, a);
  }

 private:
  // f(a with v flipped) - f(a)
  Coef delta(const Assignment& a, int v) const {
    Coef d = 0;
    for (std::size_t t : incidence_[v]) {
      const auto& m = p_.terms()[t];
      bool others = true;
      for (int u : m.vars) {
        if (u != v && !a[u]) {
          others = false;
          break;
        }
      }
      if (others) d += a[v] ? -m.coef : m.coef;
    }
    return d;
  }

  const Polynomial& p_;
  std::vector<std::vector<std::size_t>> incidence_;
};

}  // namespace detail

// Exact minimization of `original` through its convexified quadratization.
// cqp.quad must have been built from `original`.
inline BnBResult branch_and_bound(const ConvexQP& cqp, const Polynomial& original,
                                  const BnBOptions& opts = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  if (original.num_vars() != cqp.n || original.domain() != Domain::ZeroOne) {
    throw InvalidArgument("branch_and_bound: polynomial does not match the QP");
  }
  const int n = cqp.n, N = cqp.N;
  const detail::LocalSearch search(original);

  BnBResult res;
  res.method = provenance_name(cqp.provenance);
  res.n = n;
  res.N = N;
  res.mu = cqp.mu;
  bool have_incumbent = false;
  double best = std::numeric_limits<double>::infinity();

  auto cutoff = [&] {
    return opts.integer_objective ? best - 1.0 + opts.abs_tol : best - opts.abs_tol;
  };
  auto offer = [&](Assignment a) {
    Coef v = evaluate(original, a);
    if (opts.local_search) v = search.descend(a);
    if (!have_incumbent || static_cast<double>(v) < best) {
      have_incumbent = true;
      best = static_cast<double>(v);
      res.best_assignment = std::move(a);
      if (opts.log) *opts.log << "incumbent " << v << " at " << elapsed() << "s\n";
    }
  };
  auto round_originals = [&](const Eigen::VectorXd& x) {
    Assignment a(n);
    for (int i = 0; i < n; ++i) a[i] = x[i] >= 0.5;
    return a;
  };

  Node root;
  root.fixings.assign(N, -1);
  {
    const Relaxation r = solve_qp_relaxation(cqp, root.fixings, opts.qp_tol);
    if (r.status == QpStatus::NumericalFailure) {
      throw SolverError("branch_and_bound: root relaxation failed");
    }
    root.lower_bound = r.value;
    root.point = r.point;
  }
  res.lb_root = root.lower_bound;
  offer(round_originals(root.point));

  struct Entry {
    double bound;
    std::size_t seq;
    Node node;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    return a.bound != b.bound ? a.bound > b.bound : a.seq > b.seq;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
  std::size_t seq = 0;

  std::optional<Node> current = std::move(root);
  bool timed_out = false;
  while (current || !open.empty()) {
    if (!current) {
      current = std::move(const_cast<Entry&>(open.top()).node);
      open.pop();
    }
    Node node = std::move(*current);
    current.reset();
    if (node.lower_bound >= cutoff()) continue;
    if (elapsed() > opts.time_limit_s) {
      open.push({node.lower_bound, seq++, std::move(node)});
      timed_out = true;
      break;
    }

    // Most fractional free original, then most fractional free auxiliary.
    int branch = -1;
    double frac = -1.0;
    for (int i = 0; i < n; ++i) {
      if (node.fixings[i] >= 0) continue;
      const double f = std::min(node.point[i], 1.0 - node.point[i]);
      if (f > frac) frac = f, branch = i;
    }
    if (branch >= 0 && frac <= 1e-6) {
      offer(round_originals(node.point));
      if (node.lower_bound >= cutoff()) continue;
    }
    if (branch < 0) {
      // Every original is fixed, so propagation fixed the rest.
      offer(round_originals(node.point));
      continue;
    }

    std::vector<Node> kids;
    const int first = node.point[branch] >= 0.5 ? 1 : 0;
    for (int v : {first, 1 - first}) {
      Node child;
      child.fixings = node.fixings;
      child.fixings[branch] = static_cast<std::int8_t>(v);
      child.depth = node.depth + 1;
      if (!propagate(cqp.quad, child.fixings)) continue;
      const Relaxation r =
          solve_qp_relaxation(cqp, child.fixings, opts.qp_tol, &node.point);
      ++res.nodes;
      if (!r.feasible) continue;
      child.lower_bound = std::max(node.lower_bound, r.value);
      child.point = r.point;
      offer(round_originals(child.point));
      kids.push_back(std::move(child));
    }
    if (opts.log && res.nodes % 1000 < 2) {
      *opts.log << "nodes " << res.nodes << " open " << open.size() << " best "
                << best << '\n';
    }
    std::vector<Node> alive;
    for (auto& k : kids) {
      if (k.lower_bound < cutoff()) alive.push_back(std::move(k));
    }
    if (alive.size() == 2 && alive[1].lower_bound < alive[0].lower_bound) {
      std::swap(alive[0], alive[1]);
    }
    if (!alive.empty()) current = std::move(alive[0]);
    if (alive.size() == 2) {
      open.push({alive[1].lower_bound, seq++, std::move(alive[1])});
    }
  }

  res.best_value = best;
  if (timed_out) {
    res.status = BnBStatus::TimeLimit;
    double lb = best;
    while (!open.empty()) {
      lb = std::min(lb, open.top().bound);
      open.pop();
    }
    res.lb_final = lb;
  } else {
    res.status = BnBStatus::Optimal;
    res.lb_final = best;
  }
  res.gap_root = gap_percent(best, res.lb_root);
  res.gap_final = gap_percent(best, res.lb_final);
  res.t_total_s = elapsed();
  return res;
}

enum class Method { PQCR, EigShift, Oracle, QpDirect };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::PQCR: return "pqcr";
    case Method::EigShift: return "eig";
    case Method::Oracle: return "oracle";
    case Method::QpDirect: return "qp-direct";
  }
  return "?";
}

struct SolveConfig {
  Method method = Method::PQCR;
  QuadratizationRule rule = QuadratizationRule::ConsecutivePairs;
  double sdp_tol = 1e-3;
  double qp_tol = 1e-9;
  double psd_tol = kDefaultPsdTol;
  int sdp_max_iterations = 100;
  double sdp_time_s = std::numeric_limits<double>::infinity();
  double total_time_s = std::numeric_limits<double>::infinity();
  EqualityOptions equalities;
  bool integer_objective = true;
  int workers = 1;  // brute-force oracle only
  std::ostream* log = nullptr;
};

// Steps 1 and 2 of the pipeline: quadratize, relax, convexify.
struct Prepared {
  Quadratization quad;
  QuadraticProgram qp;
  EqualitySet equalities;
  std::optional<SdpSolution> sdp;
  ConvexQP cqp;
  double t_sdp_s = 0.0;
};

inline Prepared prepare(const Polynomial& p, const SolveConfig& cfg) {
  if (p.domain() != Domain::ZeroOne) {
    throw InvalidArgument("solve expects a 0/1 polynomial; apply to_binary");
  }
  Prepared out;
  out.quad = quadratize(p, cfg.rule);
  out.qp = build_qp(p, out.quad);
  if (cfg.method == Method::PQCR) {
    out.equalities = generate_equalities(out.quad, cfg.equalities);
    const auto t0 = std::chrono::steady_clock::now();
    const SdpProblem sp = build_sdp(out.qp, out.equalities);
    SdpOptions so;
    so.tol = cfg.sdp_tol;
    so.max_iterations = cfg.sdp_max_iterations;
    so.time_limit_s = cfg.sdp_time_s;
    so.log = cfg.log;
    out.sdp = solve_sdp(sp, so);
    out.t_sdp_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.sdp->status == SdpStatus::NumericalFailure) {
      throw SolverError("SDP solver failed after " +
                        std::to_string(out.sdp->iterations) + " iterations");
    }
    out.cqp = build_convex_qp(out.qp, out.equalities,
                              extract_parameters(*out.sdp), cfg.psd_tol);
  } else {
    out.cqp = eigen_convexify(out.qp, cfg.psd_tol);
  }
  return out;
}

// Full pipeline. Method::Oracle enumerates; EigShift and QpDirect both run
// branch-and-bound on the uniform-shift reformulation.
inline BnBResult solve(const Polynomial& p, const SolveConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto since = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  };
  BnBResult res;
  if (cfg.method == Method::Oracle || p.num_terms() == 0) {
    if (p.num_terms() == 0) {
      res.best_value = static_cast<double>(p.constant());
      res.best_assignment.assign(p.num_vars(), 0);
    } else {
      BruteForceOptions bo;
      bo.workers = cfg.workers;
      const BruteForceResult bf = brute_force(p, bo);
      res.best_value = static_cast<double>(bf.value);
      res.best_assignment = bf.argmin;
    }
    res.lb_root = res.lb_final = res.best_value;
    res.gap_root = res.gap_final = gap_percent(res.best_value, res.best_value);
    res.method = method_name(cfg.method);
    res.n = res.N = p.num_vars();
    res.t_total_s = since();
    return res;
  }
  Prepared prep = prepare(p, cfg);
  BnBOptions bo;
  bo.qp_tol = cfg.qp_tol;
  bo.integer_objective = cfg.integer_objective;
  bo.time_limit_s = cfg.total_time_s - since();
  bo.log = cfg.log;
  res = branch_and_bound(prep.cqp, p, bo);
  res.method = method_name(cfg.method);
  res.t_sdp_s = prep.t_sdp_s;
  if (prep.sdp) {
    res.sdp_value = prep.sdp->dual_value;
    res.sdp_status = prep.sdp->status;
  }
  res.t_total_s = since();
  return res;
}

}  // namespace pqcr

#endif  // PQCR_BNB_HPP_

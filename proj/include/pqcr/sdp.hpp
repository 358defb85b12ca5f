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

// Semidefinite relaxation of a quadratized program over the moment matrix
//
//        Z = [ 1  x^T ]
//            [ x   X  ]
//
// with one equality per null function of the EqualitySet, solved by a dense
// primal-dual interior-point method. The dual multipliers of the equality
// rows are the Hessian perturbation weights of the convex reformulation.

#ifndef PQCR_SDP_HPP_
#define PQCR_SDP_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pqcr/equalities.hpp"
#include "pqcr/error.hpp"
#include "pqcr/quadratization.hpp"

namespace pqcr {

// Symmetric matrix entry: `value` sits at (row, col) and (col, row).
struct SymEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

enum class RowTag { Corner, Square, Subset, Product, Union, Fortet };

inline const char* row_tag_name(RowTag t) {
  switch (t) {
    case RowTag::Corner: return "corner";
    case RowTag::Square: return "c1";
    case RowTag::Subset: return "c2";
    case RowTag::Product: return "c3";
    case RowTag::Union: return "c4";
    case RowTag::Fortet: return "fortet";
  }
  return "?";
}

// <A, Z> + sum_t lp_t * s_t = rhs, where s >= 0 is an optional block of
// scalar slacks (used only to append linear inequalities).
struct SdpConstraint {
  std::vector<SymEntry> entries;
  std::vector<std::pair<int, double>> lp;
  double rhs = 0.0;
  RowTag tag = RowTag::Corner;
  std::size_t tuple = 0;  // index within its family
};

struct SdpProblem {
  int dim = 0;     // N + 1
  int lp_dim = 0;  // number of scalar slacks
  Eigen::MatrixXd objective;  // <objective, Z> = <Q, X> + c^T x
  double constant = 0.0;      // added to reported values
  std::vector<SdpConstraint> constraints;
  std::size_t num_square = 0, num_subset = 0, num_product = 0, num_union = 0;

  std::size_t num_rows() const { return constraints.size(); }
};

struct SdpBuildOptions {
  // Append the four linear rows of every product definition, as
  // <row, Z> + slack = rhs. They are implied by the other constraints.
  bool with_fortet = false;
};

namespace detail {

// Entry of the coefficient matrix for the moment X_{ij} (extended indices
// i, j), so that <A, Z> picks up weight * X_ij.
inline SymEntry moment_entry(int i, int j, double weight) {
  const int r = std::min(i, j) + 1, c = std::max(i, j) + 1;
  return {r, c, r == c ? weight : 0.5 * weight};
}

// Entry for weight * x_i.
inline SymEntry linear_entry(int i, double weight) {
  return {0, i + 1, 0.5 * weight};
}

}  // namespace detail

inline SdpProblem build_sdp(const QuadraticProgram& qp, const EqualitySet& es,
                            const SdpBuildOptions& opts = {}) {
  const int N = qp.N;
  auto check = [&](int v) {
    if (v < 0 || v >= N) {
      throw InvalidArgument("build_sdp: equality references variable " +
                            std::to_string(v + 1) + " beyond N=" +
                            std::to_string(N));
    }
  };

  SdpProblem sp;
  sp.dim = N + 1;
  sp.constant = qp.constant;
  sp.objective = Eigen::MatrixXd::Zero(N + 1, N + 1);
  sp.objective.bottomRightCorner(N, N) = qp.Q;
  sp.objective.block(0, 1, 1, N) = 0.5 * qp.c.transpose();
  sp.objective.block(1, 0, N, 1) = 0.5 * qp.c;
  sp.num_square = es.square.size();
  sp.num_subset = es.subset.size();
  sp.num_product = es.product.size();
  sp.num_union = es.unions.size();

  std::set<std::vector<std::tuple<int, int, double>>> seen;
  auto add = [&](SdpConstraint row) {
    std::vector<std::tuple<int, int, double>> key;
    for (const auto& e : row.entries) key.emplace_back(e.row, e.col, e.value);
    std::sort(key.begin(), key.end());
    if (row.lp.empty() && !seen.insert(std::move(key)).second) return;
    sp.constraints.push_back(std::move(row));
  };

  add({{{0, 0, 1.0}}, {}, 1.0, RowTag::Corner, 0});
  for (std::size_t k = 0; k < es.square.size(); ++k) {
    const int i = es.square[k];
    check(i);
    add({{detail::moment_entry(i, i, 1.0), detail::linear_entry(i, -1.0)},
         {}, 0.0, RowTag::Square, k});
  }
  for (std::size_t k = 0; k < es.subset.size(); ++k) {
    const auto [i, j] = es.subset[k];
    check(i), check(j);
    add({{detail::moment_entry(i, j, -1.0), detail::linear_entry(i, 1.0)},
         {}, 0.0, RowTag::Subset, k});
  }
  for (std::size_t k = 0; k < es.product.size(); ++k) {
    const auto [i, j, l] = es.product[k];
    check(i), check(j), check(l);
    add({{detail::moment_entry(j, l, -1.0), detail::linear_entry(i, 1.0)},
         {}, 0.0, RowTag::Product, k});
  }
  for (std::size_t k = 0; k < es.unions.size(); ++k) {
    const auto [i, j, a, b] = es.unions[k];
    check(i), check(j), check(a), check(b);
    add({{detail::moment_entry(i, j, 1.0), detail::moment_entry(a, b, -1.0)},
         {}, 0.0, RowTag::Union, k});
  }

  if (opts.with_fortet) {
    const auto rows = fortet_constraints(qp.quad);
    sp.lp_dim = static_cast<int>(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      SdpConstraint row;
      row.tag = RowTag::Fortet;
      row.tuple = r;
      row.rhs = rows[r].rhs;
      for (const auto& [v, a] : rows[r].coefs) {
        row.entries.push_back(detail::linear_entry(v, a));
      }
      row.lp.emplace_back(static_cast<int>(r), 1.0);
      add(std::move(row));
    }
  }
  return sp;
}

// Sparse SDPA text block (the format read by CSDP and SDPA). CSDP's primal is
// "max tr(C Y) s.t. tr(A_k Y) = b_k, Y psd", so matrix 0 holds the negated
// objective and the optimal value printed by those solvers is -v(SDP)
// (without the program constant). Block 2, when present, is the diagonal
// slack block.
inline void write_sdpa(std::ostream& os, const SdpProblem& sp) {
  os.precision(17);
  os << "\"pqcr moment relaxation; constant " << sp.constant << "\"\n";
  os << sp.constraints.size() << '\n';
  os << (sp.lp_dim > 0 ? 2 : 1) << '\n';
  os << sp.dim;
  if (sp.lp_dim > 0) os << ' ' << -sp.lp_dim;
  os << '\n';
  for (const auto& c : sp.constraints) os << c.rhs << ' ';
  os << '\n';
  for (int r = 0; r < sp.dim; ++r) {
    for (int c = r; c < sp.dim; ++c) {
      if (sp.objective(r, c) != 0.0) {
        os << "0 1 " << r + 1 << ' ' << c + 1 << ' ' << -sp.objective(r, c)
           << '\n';
      }
    }
  }
  for (std::size_t k = 0; k < sp.constraints.size(); ++k) {
    for (const auto& e : sp.constraints[k].entries) {
      os << k + 1 << " 1 " << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value
         << '\n';
    }
    for (const auto& [t, a] : sp.constraints[k].lp) {
      os << k + 1 << " 2 " << t + 1 << ' ' << t + 1 << ' ' << a << '\n';
    }
  }
}

enum class SdpStatus { Optimal, IterLimit, NumericalFailure };

inline const char* sdp_status_name(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::IterLimit: return "iteration_limit";
    case SdpStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  Eigen::MatrixXd Z;       // primal moment matrix
  Eigen::VectorXd slacks;  // primal scalar slacks
  Eigen::VectorXd y;       // one multiplier per constraint row
  Eigen::MatrixXd S;       // dual slack objective - sum_k y_k A_k
  double primal_value = 0.0;  // <objective, Z> plus the constant
  double dual_value = 0.0;    // b^T y plus the constant; the bound side
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
  int iterations = 0;
  std::vector<std::pair<RowTag, std::size_t>> rows;
  std::size_t num_square = 0, num_subset = 0, num_product = 0, num_union = 0;
};

struct SdpOptions {
  double tol = 1e-3;
  int max_iterations = 100;
  // The final iterate is returned with status IterLimit once exceeded.
  double time_limit_s = std::numeric_limits<double>::infinity();
  double step_fraction = 0.95;
  std::ostream* log = nullptr;
};

namespace detail {

struct FullEntry {
  int r, c;
  double v;
};

// Constraint operator in expanded (both triangles) form.
class ConstraintOperator {
 public:
  explicit ConstraintOperator(const SdpProblem& sp) : n_(sp.dim), p_(sp.lp_dim) {
    rows_.resize(sp.constraints.size());
    lp_cols_.resize(p_);
    b_.resize(sp.constraints.size());
    for (std::size_t k = 0; k < sp.constraints.size(); ++k) {
      const auto& con = sp.constraints[k];
      b_[k] = con.rhs;
      for (const auto& e : con.entries) {
        rows_[k].push_back({e.row, e.col, e.value});
        if (e.row != e.col) rows_[k].push_back({e.col, e.row, e.value});
      }
      for (const auto& [t, a] : con.lp) lp_cols_[t].emplace_back(k, a);
    }
  }

  std::size_t m() const { return rows_.size(); }
  const Eigen::VectorXd& b() const { return b_; }

  // tr(A_k G) for every k, plus the slack part with weights w.
  Eigen::VectorXd apply(const Eigen::MatrixXd& G, const Eigen::VectorXd* w) const {
    Eigen::VectorXd out(m());
    for (std::size_t k = 0; k < m(); ++k) {
      double s = 0.0;
      for (const auto& e : rows_[k]) s += e.v * G(e.c, e.r);
      out[k] = s;
    }
    if (w) {
      for (int t = 0; t < p_; ++t) {
        for (const auto& [k, a] : lp_cols_[t]) out[k] += a * (*w)[t];
      }
    }
    return out;
  }

  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
    for (std::size_t k = 0; k < m(); ++k) {
      for (const auto& e : rows_[k]) out(e.r, e.c) += y[k] * e.v;
    }
    return out;
  }

  Eigen::VectorXd adjoint_lp(const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(p_);
    for (int t = 0; t < p_; ++t) {
      for (const auto& [k, a] : lp_cols_[t]) out[t] += a * y[k];
    }
    return out;
  }

  // M_kl = tr(A_k X A_l W) + sum_t a_kt a_lt d_t
  Eigen::MatrixXd schur(const Eigen::MatrixXd& X, const Eigen::MatrixXd& W,
                        const Eigen::VectorXd& d) const {
    const std::size_t mm = m();
    Eigen::MatrixXd M(mm, mm);
    for (std::size_t k = 0; k < mm; ++k) {
      const auto& ak = rows_[k];
      for (std::size_t l = k; l < mm; ++l) {
        double s = 0.0;
        for (const auto& e : ak) {
          for (const auto& f : rows_[l]) {
            s += e.v * f.v * X(e.c, f.r) * W(f.c, e.r);
          }
        }
        M(k, l) = s;
      }
    }
    for (int t = 0; t < p_; ++t) {
      const auto& col = lp_cols_[t];
      for (std::size_t u = 0; u < col.size(); ++u) {
        for (std::size_t v = u; v < col.size(); ++v) {
          const auto k = std::min(col[u].first, col[v].first);
          const auto l = std::max(col[u].first, col[v].first);
          const double w = col[u].second * col[v].second * d[t];
          M(k, l) += (u != v && k == l) ? 2.0 * w : w;
        }
      }
    }
    return M.selfadjointView<Eigen::Upper>();
  }

 private:
  int n_;
  int p_;
  std::vector<std::vector<FullEntry>> rows_;
  std::vector<std::vector<std::pair<std::size_t, double>>> lp_cols_;
  Eigen::VectorXd b_;
};

// Largest alpha with X + alpha * dX positive semidefinite (infinity if every
// step keeps it so). X must be positive definite.
inline double max_psd_step(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX) {
  Eigen::LLT<Eigen::MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  const Eigen::MatrixXd half = llt.matrixL().solve(dX);
  Eigen::MatrixXd T = llt.matrixL().solve(half.transpose()).transpose();
  T = (0.5 * (T + T.transpose())).eval();
  const double lmin =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

inline double max_positive_step(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
  }
  return a;
}

}  // namespace detail

// Infeasible-start path-following on
//   min <C, Z>  s.t.  <A_k, Z> + a_k^T s = b_k,  Z psd, s >= 0
// with the HKM search direction and a Mehrotra predictor-corrector. Stops
// when relative primal infeasibility, dual infeasibility and duality gap are
// all below tol.
inline SdpSolution solve_sdp(const SdpProblem& sp, const SdpOptions& opts = {}) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const auto start = std::chrono::steady_clock::now();
  const detail::ConstraintOperator A(sp);
  const int n = sp.dim, p = sp.lp_dim;
  const std::size_t m = A.m();
  const MatrixXd& C = sp.objective;
  const VectorXd& b = A.b();

  SdpSolution sol;
  for (const auto& c : sp.constraints) sol.rows.emplace_back(c.tag, c.tuple);
  sol.num_square = sp.num_square;
  sol.num_subset = sp.num_subset;
  sol.num_product = sp.num_product;
  sol.num_union = sp.num_union;

  // Starting point scaled as in CSDP's initsoln.
  double max_a = 0.0, ratio = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double fro2 = 0.0;
    for (const auto& e : sp.constraints[k].entries) {
      fro2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
    }
    for (const auto& [t, a] : sp.constraints[k].lp) fro2 += a * a;
    const double fro = std::sqrt(fro2);
    max_a = std::max(max_a, fro);
    ratio = std::max(ratio, (1.0 + std::abs(b[k])) / (1.0 + fro));
  }
  const double c_norm = C.norm();
  const double total_dim = static_cast<double>(n + p);
  const double xi = 10.0 * total_dim * ratio;
  const double eta = 10.0 * (1.0 + std::max(max_a, c_norm)) / std::sqrt(total_dim);

  MatrixXd X = xi * MatrixXd::Identity(n, n);
  VectorXd x = VectorXd::Constant(p, xi);
  MatrixXd S = eta * MatrixXd::Identity(n, n);
  VectorXd s = VectorXd::Constant(p, eta);
  VectorXd y = VectorXd::Zero(m);
  const VectorXd c_lp = VectorXd::Zero(p);

  // Best iterate seen so far; returned when the solve stops short.
  struct Iterate {
    MatrixXd X, S;
    VectorXd x, s, y;
    double score = std::numeric_limits<double>::infinity();
    double pinf = 0.0, dinf = 0.0, gap = 0.0;
  } best;

  auto finish = [&](SdpStatus status, int iter) {
    if (status != SdpStatus::Optimal && best.X.size() > 0) {
      X = best.X;
      x = best.x;
      S = best.S;
      s = best.s;
      y = best.y;
      sol.primal_infeasibility = best.pinf;
      sol.dual_infeasibility = best.dinf;
      sol.relative_gap = best.gap;
    }
    sol.status = status;
    sol.iterations = iter;
    sol.Z = X;
    sol.slacks = x;
    sol.y = y;
    sol.S = C - A.adjoint(y);
    const double pobj = (C.cwiseProduct(X)).sum();
    sol.primal_value = pobj + sp.constant;
    sol.dual_value = b.dot(y) + sp.constant;
    return sol;
  };

  for (int iter = 0;; ++iter) {
    const VectorXd rp = b - A.apply(X, &x);
    const MatrixXd Rd = C - A.adjoint(y) - S;
    const VectorXd rd = c_lp - A.adjoint_lp(y) - s;
    const double pobj = C.cwiseProduct(X).sum();
    const double dobj = b.dot(y);
    sol.primal_infeasibility = rp.norm() / (1.0 + b.norm());
    sol.dual_infeasibility =
        std::sqrt(Rd.squaredNorm() + rd.squaredNorm()) / (1.0 + c_norm);
    sol.relative_gap =
        std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    if (opts.log) {
      *opts.log << "sdp it " << iter << " pobj " << pobj << " dobj " << dobj
                << " pinf " << sol.primal_infeasibility << " dinf "
                << sol.dual_infeasibility << " gap " << sol.relative_gap << '\n';
    }
    if (sol.primal_infeasibility <= opts.tol &&
        sol.dual_infeasibility <= opts.tol && sol.relative_gap <= opts.tol) {
      return finish(SdpStatus::Optimal, iter);
    }
    const double score = std::max(
        {sol.primal_infeasibility, sol.dual_infeasibility, sol.relative_gap});
    if (score < best.score) {
      best = {X, S, x, s, y, score, sol.primal_infeasibility,
              sol.dual_infeasibility, sol.relative_gap};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (iter >= opts.max_iterations || elapsed > opts.time_limit_s) {
      return finish(SdpStatus::IterLimit, iter);
    }

    const double mu = (X.cwiseProduct(S).sum() + x.dot(s)) / total_dim;
    Eigen::LLT<MatrixXd> s_llt(S);
    if (s_llt.info() != Eigen::Success) {
      return finish(SdpStatus::NumericalFailure, iter);
    }
    const MatrixXd W = s_llt.solve(MatrixXd::Identity(n, n));
    const VectorXd s_inv = s.cwiseInverse();
    const VectorXd d = x.cwiseProduct(s_inv);

    MatrixXd M = A.schur(X, W, d);
    Eigen::LLT<MatrixXd> m_llt(M);
    double reg = 1e-10 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
    while (m_llt.info() != Eigen::Success && reg < 1e-2) {
      M.diagonal().array() += reg;
      m_llt.compute(M);
      reg *= 100.0;
    }
    if (m_llt.info() != Eigen::Success) {
      return finish(SdpStatus::NumericalFailure, iter);
    }

    const MatrixXd XRdW = X * Rd * W;
    const VectorXd base_lp = x.cwiseProduct(rd).cwiseProduct(s_inv);
    const VectorXd base = b + A.apply(XRdW, &base_lp);

    auto direction = [&](const VectorXd& rhs, double sigma_mu,
                         const MatrixXd* corr, const VectorXd* corr_lp,
                         MatrixXd& dX, VectorXd& dx, VectorXd& dy, MatrixXd& dS,
                         VectorXd& ds) {
      dy = m_llt.solve(rhs);
      dS = Rd - A.adjoint(dy);
      dS = (0.5 * (dS + dS.transpose())).eval();
      ds = rd - A.adjoint_lp(dy);
      dX = -X - X * dS * W;
      dx = -x - x.cwiseProduct(ds).cwiseProduct(s_inv);
      if (sigma_mu != 0.0) {
        dX += sigma_mu * W;
        dx += sigma_mu * s_inv;
      }
      if (corr) {
        dX -= *corr;
        dx -= *corr_lp;
      }
      dX = (0.5 * (dX + dX.transpose())).eval();
    };

    MatrixXd dX, dS;
    VectorXd dx, dy, ds;
    direction(base, 0.0, nullptr, nullptr, dX, dx, dy, dS, ds);
    const double ap_aff = std::min(
        1.0, std::min(detail::max_psd_step(X, dX), detail::max_positive_step(x, dx)));
    const double ad_aff = std::min(
        1.0, std::min(detail::max_psd_step(S, dS), detail::max_positive_step(s, ds)));
    const double mu_aff =
        ((X + ap_aff * dX).cwiseProduct(S + ad_aff * dS).sum() +
         (x + ap_aff * dx).dot(s + ad_aff * ds)) /
        total_dim;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    const MatrixXd corr = dX * dS * W;
    const VectorXd corr_lp = dx.cwiseProduct(ds).cwiseProduct(s_inv);
    const VectorXd winv_lp = s_inv;
    VectorXd rhs = base - sigma * mu * A.apply(W, &winv_lp) + A.apply(corr, &corr_lp);
    direction(rhs, sigma * mu, &corr, &corr_lp, dX, dx, dy, dS, ds);

    const double ap = std::min(
        1.0, opts.step_fraction * std::min(detail::max_psd_step(X, dX),
                                           detail::max_positive_step(x, dx)));
    const double ad = std::min(
        1.0, opts.step_fraction * std::min(detail::max_psd_step(S, dS),
                                           detail::max_positive_step(s, ds)));
    X += ap * dX;
    x += ap * dx;
    y += ad * dy;
    S += ad * dS;
    s += ad * ds;
    X = (0.5 * (X + X.transpose())).eval();
    S = (0.5 * (S + S.transpose())).eval();
  }
}

// Hessian perturbation weights, one per null function, in EqualitySet order.
// Rows dropped as duplicates by build_sdp get weight 0.
struct Parameters {
  Eigen::VectorXd alpha;                         // square
  Eigen::VectorXd beta;                          // subset
  Eigen::VectorXd delta;                         // product
  Eigen::VectorXd lambda;                        // union
  double corner = 0.0;                           // multiplier of Z_00 = 1
};

// Row k of the relaxation is <A_k, Z> = 0 with A_k the matrix of a null
// function h_k, so the dual slack C - sum y_k A_k is the matrix of
// g - sum y_k h_k. The perturbation weight of h_k is therefore -y_k.
inline Parameters extract_parameters(const SdpSolution& sol) {
  if (sol.status == SdpStatus::NumericalFailure && sol.y.size() == 0) {
    throw SolverError("extract_parameters: solver produced no multipliers");
  }
  Parameters prm;
  prm.alpha = Eigen::VectorXd::Zero(sol.num_square);
  prm.beta = Eigen::VectorXd::Zero(sol.num_subset);
  prm.delta = Eigen::VectorXd::Zero(sol.num_product);
  prm.lambda = Eigen::VectorXd::Zero(sol.num_union);
  for (std::size_t k = 0; k < sol.rows.size(); ++k) {
    const auto [tag, idx] = sol.rows[k];
    const double w = -sol.y[k];
    switch (tag) {
      case RowTag::Corner: prm.corner = sol.y[k]; break;
      case RowTag::Square: prm.alpha[idx] = w; break;
      case RowTag::Subset: prm.beta[idx] = w; break;
      case RowTag::Product: prm.delta[idx] = w; break;
      case RowTag::Union: prm.lambda[idx] = w; break;
      case RowTag::Fortet: break;
    }
  }
  return prm;
}

}  // namespace pqcr

#endif  // PQCR_SDP_HPP_

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

#ifndef PQCR_REFORMULATION_HPP_
#define PQCR_REFORMULATION_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pqcr/equalities.hpp"
#include "pqcr/error.hpp"
#include "pqcr/qp_solver.hpp"
#include "pqcr/quadratization.hpp"
#include "pqcr/sdp.hpp"

namespace pqcr {

enum class Provenance { PQCR, EigShift };

inline const char* provenance_name(Provenance p) {
  return p == Provenance::PQCR ? "PQCR" : "EigShift";
}

// min x^T Qstar x + cstar^T x + constant over F_E, with Qstar positive
// semidefinite. Agrees with the source program on every lifted binary point.
struct ConvexQP {
  int n = 0;
  int N = 0;
  Eigen::MatrixXd Qstar;
  Eigen::VectorXd cstar;
  double constant = 0.0;
  Quadratization quad;
  Provenance provenance = Provenance::PQCR;
  double lambda_min = 0.0;  // of Qstar before the safeguard
  double mu = 0.0;          // safeguard shift, 0 when none was needed
  double shift = 0.0;       // uniform shift of the EigShift baseline

  double value(const Eigen::VectorXd& x) const {
    return x.dot(Qstar * x) + cstar.dot(x) + constant;
  }

  double value(const Assignment& x) const {
    Eigen::VectorXd v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i];
    return value(v);
  }
};

inline constexpr double kDefaultPsdTol = 1e-8;

namespace detail {

inline double min_eigenvalue(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

// Adds mu I to Q and subtracts mu from c (x_i^2 = x_i on binaries) when Q
// has a negative eigenvalue.
inline void psd_safeguard(ConvexQP& cqp, double psd_tol) {
  cqp.lambda_min = min_eigenvalue(cqp.Qstar);
  if (cqp.lambda_min < 0.0) {
    cqp.mu = -cqp.lambda_min + psd_tol;
    cqp.Qstar.diagonal().array() += cqp.mu;
    cqp.cstar.array() -= cqp.mu;
  }
}

inline void add_sym(Eigen::MatrixXd& Q, int i, int j, double w) {
  if (i == j) {
    Q(i, i) += w;
  } else {
    Q(i, j) += 0.5 * w;
    Q(j, i) += 0.5 * w;
  }
}

}  // namespace detail

// g* = g + sum alpha_i (x_i^2 - x_i) + sum beta_ij (x_i - x_i x_j)
//        + sum delta_ijk (x_i - x_j x_k) + sum lambda_ijkl (x_i x_j - x_k x_l)
inline ConvexQP build_convex_qp(const QuadraticProgram& qp, const EqualitySet& es,
                                const Parameters& prm,
                                double psd_tol = kDefaultPsdTol) {
  if (prm.alpha.size() != static_cast<Eigen::Index>(es.square.size()) ||
      prm.beta.size() != static_cast<Eigen::Index>(es.subset.size()) ||
      prm.delta.size() != static_cast<Eigen::Index>(es.product.size()) ||
      prm.lambda.size() != static_cast<Eigen::Index>(es.unions.size())) {
    throw InvalidArgument("build_convex_qp: parameters do not match the "
                          "equality set");
  }
  ConvexQP cqp;
  cqp.n = qp.n;
  cqp.N = qp.N;
  cqp.Qstar = qp.Q;
  cqp.cstar = qp.c;
  cqp.constant = qp.constant;
  cqp.quad = qp.quad;
  cqp.provenance = Provenance::PQCR;
  auto check = [&](int v) {
    if (v < 0 || v >= qp.N) {
      throw InvalidArgument("build_convex_qp: equality index out of range");
    }
  };
  for (std::size_t k = 0; k < es.square.size(); ++k) {
    const int i = es.square[k];
    check(i);
    cqp.Qstar(i, i) += prm.alpha[k];
    cqp.cstar[i] -= prm.alpha[k];
  }
  for (std::size_t k = 0; k < es.subset.size(); ++k) {
    const auto [i, j] = es.subset[k];
    check(i), check(j);
    detail::add_sym(cqp.Qstar, i, j, -prm.beta[k]);
    cqp.cstar[i] += prm.beta[k];
  }
  for (std::size_t k = 0; k < es.product.size(); ++k) {
    const auto [i, j, l] = es.product[k];
    check(i), check(j), check(l);
    detail::add_sym(cqp.Qstar, j, l, -prm.delta[k]);
    cqp.cstar[i] += prm.delta[k];
  }
  for (std::size_t k = 0; k < es.unions.size(); ++k) {
    const auto [i, j, a, b] = es.unions[k];
    check(i), check(j), check(a), check(b);
    detail::add_sym(cqp.Qstar, i, j, prm.lambda[k]);
    detail::add_sym(cqp.Qstar, a, b, -prm.lambda[k]);
  }
  cqp.Qstar = (0.5 * (cqp.Qstar + cqp.Qstar.transpose())).eval();
  detail::psd_safeguard(cqp, psd_tol);
  return cqp;
}

// Q - lambda_min(Q) I, c + lambda_min(Q): the uniform diagonal shift.
inline ConvexQP eigen_convexify(const QuadraticProgram& qp,
                                double psd_tol = kDefaultPsdTol) {
  ConvexQP cqp;
  cqp.n = qp.n;
  cqp.N = qp.N;
  cqp.Qstar = qp.Q;
  cqp.cstar = qp.c;
  cqp.constant = qp.constant;
  cqp.quad = qp.quad;
  cqp.provenance = Provenance::EigShift;
  const double lmin = detail::min_eigenvalue(qp.Q);
  if (lmin < 0.0) {
    cqp.shift = -lmin;
    cqp.Qstar.diagonal().array() -= lmin;
    cqp.cstar.array() += lmin;
  }
  detail::psd_safeguard(cqp, psd_tol);
  return cqp;
}

// Partial assignment over the extended variables: -1 free, else 0 or 1.
using Fixings = std::vector<std::int8_t>;

// Closes the fixings under x_i = x_j x_k for every product definition.
// Returns false on a contradiction.
inline bool propagate(const Quadratization& q, Fixings& fx) {
  bool changed = true;
  auto set = [&](int v, std::int8_t val) {
    if (fx[v] == val) return true;
    if (fx[v] >= 0) return false;
    fx[v] = val;
    changed = true;
    return true;
  };
  while (changed) {
    changed = false;
    for (const auto& d : q.defs) {
      const auto vi = fx[d.var], vl = fx[d.left], vr = fx[d.right];
      if ((vl == 0 || vr == 0) && !set(d.var, 0)) return false;
      if (vl == 1 && vr == 1 && !set(d.var, 1)) return false;
      if (vi == 1 && !(set(d.left, 1) && set(d.right, 1))) return false;
      if (vi == 0 && vl == 1 && !set(d.right, 0)) return false;
      if (vi == 0 && vr == 1 && !set(d.left, 0)) return false;
    }
  }
  return true;
}

struct Relaxation {
  bool feasible = true;
  QpStatus status = QpStatus::Optimal;
  double value = 0.0;        // certified lower bound, constant included
  double primal_value = 0.0; // objective at point
  Eigen::VectorXd point;     // over all N extended variables
};

// min g*(x) over [0,1]^N ∩ Fortet ∩ fixings. Fixed variables are
// substituted out; an auxiliary whose definition has a member fixed to 1 is
// identified with the other member.
inline Relaxation solve_qp_relaxation(const ConvexQP& cqp, const Fixings& fixings,
                                      double tol = 1e-9,
                                      const Eigen::VectorXd* warm = nullptr) {
  const int N = cqp.N;
  if (static_cast<int>(fixings.size()) != N) {
    throw InvalidArgument("solve_qp_relaxation: fixings size does not match N");
  }
  Relaxation out;
  // Each variable is either the constant `fixed_val` or the free column rep.
  std::vector<int> rep(N, -1);
  std::vector<double> fixed_val(N, 0.0);
  std::vector<int> columns;  // variable owning each free column
  auto free_col = [&](int v) {
    rep[v] = static_cast<int>(columns.size());
    columns.push_back(v);
  };
  for (int i = 0; i < cqp.n; ++i) {
    if (fixings[i] >= 0) {
      fixed_val[i] = fixings[i];
    } else {
      free_col(i);
    }
  }
  for (const auto& d : cqp.quad.defs) {
    const int i = d.var;
    if (fixings[i] >= 0) {
      fixed_val[i] = fixings[i];
      continue;
    }
    const int l = d.left, r = d.right;
    const bool lf = rep[l] < 0, rf = rep[r] < 0;
    if ((lf && fixed_val[l] == 0.0) || (rf && fixed_val[r] == 0.0)) {
      fixed_val[i] = 0.0;
    } else if (lf && rf) {
      fixed_val[i] = 1.0;
    } else if (lf) {
      rep[i] = rep[r];
    } else if (rf || rep[l] == rep[r]) {
      rep[i] = rep[l];
    } else {
      free_col(i);
    }
  }

  const int F = static_cast<int>(columns.size());
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, F);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(N);
  for (int v = 0; v < N; ++v) {
    if (rep[v] >= 0) {
      P(v, rep[v]) = 1.0;
    } else {
      x0[v] = fixed_val[v];
    }
  }
  const Eigen::MatrixXd H = 2.0 * P.transpose() * cqp.Qstar * P;
  const Eigen::VectorXd f = P.transpose() * (2.0 * cqp.Qstar * x0 + cqp.cstar);
  const double base = x0.dot(cqp.Qstar * x0) + cqp.cstar.dot(x0) + cqp.constant;

  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (int k = 0; k < F; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(F);
    e[k] = 1.0;
    rows.push_back(e);
    rhs.push_back(1.0);
    rows.push_back(-e);
    rhs.push_back(0.0);
  }
  for (const auto& ineq : fortet_constraints(cqp.quad)) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(F);
    double b = ineq.rhs;
    for (const auto& [v, coef] : ineq.coefs) {
      if (rep[v] >= 0) {
        a[rep[v]] += coef;
      } else {
        b -= coef * fixed_val[v];
      }
    }
    if (F == 0 || a.cwiseAbs().maxCoeff() == 0.0) {
      if (b < -1e-9) {
        out.feasible = false;
        return out;
      }
      continue;
    }
    // Single-variable rows restate the box, except when they tighten it.
    if ((a.array() != 0.0).count() == 1) {
      const Eigen::Index k = [&] {
        Eigen::Index idx;
        a.cwiseAbs().maxCoeff(&idx);
        return idx;
      }();
      const double bound = b / a[k];
      if (a[k] > 0.0 && bound >= 1.0) continue;
      if (a[k] < 0.0 && bound <= 0.0) continue;
    }
    rows.push_back(a);
    rhs.push_back(b);
  }
  Eigen::MatrixXd G(rows.size(), F);
  Eigen::VectorXd h(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    G.row(r) = rows[r].transpose();
    h[r] = rhs[r];
  }

  Eigen::VectorXd warm_f;
  if (warm && warm->size() == N) {
    warm_f.resize(F);
    for (int k = 0; k < F; ++k) warm_f[k] = (*warm)[columns[k]];
  }
  QpOptions qo;
  qo.tol = tol;
  const QpResult r = solve_convex_qp(H, f, G, h, warm_f.size() ? &warm_f : nullptr, qo);
  out.status = r.status;
  out.value = r.lower_bound + base;
  out.primal_value = r.value + base;
  out.point = P * r.x + x0;
  return out;
}

// Optimal value of the continuous relaxation of (QP*), certified from below.
inline double continuous_bound(const ConvexQP& cqp, double tol = 1e-9) {
  const Relaxation r = solve_qp_relaxation(cqp, Fixings(cqp.N, -1), tol);
  if (r.status == QpStatus::NumericalFailure) {
    throw SolverError("continuous_bound: QP solver failed");
  }
  return r.value;
}

}  // namespace pqcr

#endif  // PQCR_REFORMULATION_HPP_

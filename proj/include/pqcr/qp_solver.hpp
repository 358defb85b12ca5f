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

// Primal-dual interior-point method for
//
//     min  1/2 x^T H x + f^T x   s.t.  G x <= h
//
// with H positive semidefinite and a bounded feasible set inside [0,1]^n.

#ifndef PQCR_QP_SOLVER_HPP_
#define PQCR_QP_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace pqcr {

enum class QpStatus { Optimal, IterLimit, NumericalFailure };

struct QpResult {
  QpStatus status = QpStatus::NumericalFailure;
  Eigen::VectorXd x;
  Eigen::VectorXd z;   // multipliers of G x <= h
  double value = 0.0;  // objective at x
  // Lagrangian value at (x, z) corrected by the dual residual over the unit
  // box. Below the true minimum whenever the feasible set lies in [0,1]^n.
  double lower_bound = -std::numeric_limits<double>::infinity();
  int iterations = 0;
};

struct QpOptions {
  double tol = 1e-9;
  int max_iterations = 200;
};

inline QpResult solve_convex_qp(const Eigen::MatrixXd& H, const Eigen::VectorXd& f,
                                const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                                const Eigen::VectorXd* warm = nullptr,
                                const QpOptions& opts = {}) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const Eigen::Index n = f.size(), m = h.size();
  QpResult res;
  if (n == 0) {
    res.status = QpStatus::Optimal;
    res.x = VectorXd(0);
    res.z = VectorXd::Zero(m);
    res.lower_bound = 0.0;
    return res;
  }

  VectorXd x = VectorXd::Constant(n, 0.5);
  if (warm && warm->size() == n) {
    x = warm->cwiseMax(0.05).cwiseMin(0.95);
  }
  VectorXd s = (h - G * x).cwiseMax(0.1);
  VectorXd z = VectorXd::Ones(m);
  const double scale = 1.0 + std::max(f.cwiseAbs().maxCoeff(),
                                      H.size() ? H.cwiseAbs().maxCoeff() : 0.0);

  auto objective = [&](const VectorXd& v) { return 0.5 * v.dot(H * v) + f.dot(v); };
  auto certify = [&](QpStatus status, int iter) {
    res.status = status;
    res.iterations = iter;
    res.x = x;
    res.z = z;
    res.value = objective(x);
    const VectorXd rd = H * x + f + G.transpose() * z;
    double lag = res.value + z.dot(G * x - h);
    for (Eigen::Index i = 0; i < n; ++i) {
      lag -= std::abs(rd[i]) * std::max(std::abs(x[i]), std::abs(1.0 - x[i]));
    }
    res.lower_bound = lag;
    return res;
  };

  for (int iter = 0;; ++iter) {
    const VectorXd rd = H * x + f + G.transpose() * z;
    const VectorXd rp = G * x + s - h;
    const double mu = m ? s.dot(z) / static_cast<double>(m) : 0.0;
    const double obj = objective(x);
    if (rd.cwiseAbs().maxCoeff() <= opts.tol * scale &&
        (m == 0 || rp.cwiseAbs().maxCoeff() <= opts.tol) &&
        s.dot(z) <= opts.tol * (1.0 + std::abs(obj))) {
      return certify(QpStatus::Optimal, iter);
    }
    if (iter >= opts.max_iterations) return certify(QpStatus::IterLimit, iter);

    const VectorXd w = z.cwiseQuotient(s);
    MatrixXd K = H + G.transpose() * w.asDiagonal() * G;
    Eigen::LLT<MatrixXd> llt(K);
    double reg = 1e-12 * std::max(1.0, K.diagonal().maxCoeff());
    while (llt.info() != Eigen::Success && reg < 1.0) {
      K.diagonal().array() += reg;
      llt.compute(K);
      reg *= 100.0;
    }
    if (llt.info() != Eigen::Success) {
      return certify(QpStatus::NumericalFailure, iter);
    }

    auto direction = [&](const VectorXd& rc, VectorXd& dx, VectorXd& ds,
                         VectorXd& dz) {
      const VectorXd t = (rc - z.cwiseProduct(rp)).cwiseQuotient(s);
      dx = llt.solve(-rd + G.transpose() * t);
      ds = -rp - G * dx;
      dz = (-rc - z.cwiseProduct(ds)).cwiseQuotient(s);
    };
    auto max_step = [](const VectorXd& v, const VectorXd& dv) {
      double a = 1.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
      }
      return a;
    };

    VectorXd dx, ds, dz;
    VectorXd rc = s.cwiseProduct(z);
    direction(rc, dx, ds, dz);
    const double a_aff = std::min(max_step(s, ds), max_step(z, dz));
    const double mu_aff =
        m ? (s + a_aff * ds).dot(z + a_aff * dz) / static_cast<double>(m) : 0.0;
    const double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3.0) : 0.0;

    rc += ds.cwiseProduct(dz) - VectorXd::Constant(m, sigma * mu);
    direction(rc, dx, ds, dz);
    const double a = std::min(1.0, 0.99 * std::min(max_step(s, ds), max_step(z, dz)));
    x += a * dx;
    s += a * ds;
    z += a * dz;
  }
}

}  // namespace pqcr

#endif  // PQCR_QP_SOLVER_HPP_

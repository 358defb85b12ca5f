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

// JSON forms of instances, programs and reports. Variable indices are
// 1-based in every document.

#ifndef PQCR_JSON_IO_HPP_
#define PQCR_JSON_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pqcr/bnb.hpp"
#include "pqcr/equalities.hpp"
#include "pqcr/error.hpp"
#include "pqcr/polynomial.hpp"
#include "pqcr/quadratization.hpp"
#include "pqcr/reformulation.hpp"

namespace pqcr {

using json = nlohmann::json;

inline json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json vars = json::array();
    for (int v : t.vars) vars.push_back(v + 1);
    terms.push_back({{"c", t.coef}, {"vars", vars}});
  }
  return {{"n", p.num_vars()},
          {"constant", p.constant()},
          {"domain", p.domain() == Domain::ZeroOne ? "01" : "pm1"},
          {"terms", terms}};
}

inline Polynomial polynomial_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const Coef constant = j.value("constant", Coef{0});
    const std::string dom = j.value("domain", std::string("01"));
    if (dom != "01" && dom != "pm1") throw ParseError(0, "unknown domain " + dom);
    std::vector<Monomial> terms;
    for (const auto& t : j.at("terms")) {
      Monomial m;
      m.coef = t.at("c").get<Coef>();
      for (const auto& v : t.at("vars")) {
        const int idx = v.get<int>();
        if (idx < 1 || idx > n) {
          throw ParseError(0, "variable index " + std::to_string(idx) +
                                  " out of range 1.." + std::to_string(n));
        }
        m.vars.push_back(idx - 1);
      }
      terms.push_back(std::move(m));
    }
    return Polynomial(n, std::move(terms), constant,
                      dom == "01" ? Domain::ZeroOne : Domain::PlusMinusOne);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("instance JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
}

// Text format, or JSON when the first non-blank character is '{'.
inline Polynomial parse_any(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(0, e.what());
    }
    return polynomial_from_json(j);
  }
  return parse_instance(text);
}

inline Polynomial load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_any(ss.str());
}

namespace detail {

inline json matrix_upper(const Eigen::MatrixXd& Q) {
  json out = json::array();
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    for (Eigen::Index k = i; k < Q.cols(); ++k) {
      if (Q(i, k) != 0.0) out.push_back({i + 1, k + 1, Q(i, k)});
    }
  }
  return out;
}

inline json product_triples(const Quadratization& q) {
  json out = json::array();
  for (const auto& d : q.defs) out.push_back({d.var + 1, d.left + 1, d.right + 1});
  return out;
}

inline json vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace detail

// Q as upper-triangle [i, j, value] entries of the symmetric matrix.
inline json to_json(const QuadraticProgram& qp) {
  return {{"N", qp.N},
          {"n", qp.n},
          {"triples", detail::product_triples(qp.quad)},
          {"Q", detail::matrix_upper(qp.Q)},
          {"c", detail::vector_json(qp.c)},
          {"const", qp.constant}};
}

inline json to_json(const ConvexQP& cqp) {
  return {{"N", cqp.N},
          {"n", cqp.n},
          {"triples", detail::product_triples(cqp.quad)},
          {"Q", detail::matrix_upper(cqp.Qstar)},
          {"c", detail::vector_json(cqp.cstar)},
          {"const", cqp.constant},
          {"provenance", provenance_name(cqp.provenance)},
          {"mu", cqp.mu},
          {"shift", cqp.shift}};
}

inline json to_json(const EqualitySet& es) {
  auto plus1 = [](auto tuple) {
    json t = json::array();
    for (int v : tuple) t.push_back(v + 1);
    return t;
  };
  json sq = json::array(), sub = json::array(), prod = json::array(),
       uni = json::array();
  for (int i : es.square) sq.push_back(i + 1);
  for (const auto& t : es.subset) sub.push_back(plus1(t));
  for (const auto& t : es.product) prod.push_back(plus1(t));
  for (const auto& t : es.unions) uni.push_back(plus1(t));
  return {{"square", sq}, {"subset", sub}, {"product", prod}, {"union", uni},
          {"counts",
           {{"square", es.square.size()},
            {"subset", es.subset.size()},
            {"product", es.product.size()},
            {"union", es.unions.size()}}}};
}

inline json to_json(const BnBResult& r) {
  json assignment = json::array();
  for (auto b : r.best_assignment) assignment.push_back(static_cast<int>(b));
  json j = {{"status", bnb_status_name(r.status)},
            {"best_value", r.best_value},
            {"assignment", assignment},
            {"lb_root", r.lb_root},
            {"lb_final", r.lb_final},
            {"gap_root_pct", r.gap_root.value},
            {"gap_final_pct", r.gap_final.value},
            {"nodes", r.nodes},
            {"t_sdp_s", r.t_sdp_s},
            {"t_total_s", r.t_total_s},
            {"method", r.method},
            {"n", r.n},
            {"N", r.N},
            {"mu", r.mu}};
  if (r.sdp_value) j["sdp_value"] = *r.sdp_value;
  if (r.sdp_status) j["sdp_status"] = sdp_status_name(*r.sdp_status);
  if (r.gap_root.absolute) j["gap_absolute"] = true;
  return j;
}

}  // namespace pqcr

#endif  // PQCR_JSON_IO_HPP_

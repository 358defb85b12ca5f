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

// pqcr: command-line driver for the PQCR pipeline.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pqcr/json_io.hpp"
#include "pqcr/pqcr.hpp"

namespace {

using namespace pqcr;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitTimeLimit = 4;

struct RunConfig {
  std::string instance;
  std::string method = "pqcr";
  std::string rule = "alg2";
  double sdp_tol = 1e-3;
  double qp_tol = 1e-9;
  double psd_tol = kDefaultPsdTol;
  double sdp_s = std::numeric_limits<double>::infinity();
  double total_s = std::numeric_limits<double>::infinity();
  std::size_t cap4 = 0;  // 0: library default
  int workers = 1;
  bool fix_sym = false;
  bool verbose = false;
  std::string json_out;
};

void env_override(const char* name, double& value) {
  if (const char* s = std::getenv(name)) {
    try {
      value = std::stod(s);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string(name) + ": not a number: " + s);
    }
  }
}

void add_common(CLI::App* sub, RunConfig& rc, bool with_method) {
  sub->add_option("instance", rc.instance, "Instance file (text or JSON)")->required();
  sub->add_option("--rule", rc.rule, "Quadratization rule")
      ->check(CLI::IsMember({"alg2", "pc1"}));
  if (with_method) {
    sub->add_option("--method", rc.method, "Solution method")
        ->check(CLI::IsMember({"pqcr", "eig", "oracle", "qp-direct"}));
  }
  sub->add_option("--sdp-tol", rc.sdp_tol, "SDP relative tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--qp-tol", rc.qp_tol, "QP tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--psd-tol", rc.psd_tol, "PSD safeguard margin")
      ->check(CLI::PositiveNumber);
  sub->add_option("--sdp-time", rc.sdp_s, "SDP time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--time-limit", rc.total_s, "Total time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--cap4", rc.cap4, "Cap on union-family equalities");
  sub->add_option("--workers", rc.workers, "Brute-force worker threads")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--fix-sym", rc.fix_sym, "Fix one variable to 0 (complement symmetry)");
  sub->add_flag("-v,--verbose", rc.verbose, "Solver progress on stderr");
  sub->add_option("--json", rc.json_out, "Write the JSON report here ('-' for stdout)");
}

Method parse_method(const std::string& s) {
  if (s == "pqcr") return Method::PQCR;
  if (s == "eig") return Method::EigShift;
  if (s == "oracle") return Method::Oracle;
  return Method::QpDirect;
}

SolveConfig solve_config(const RunConfig& rc) {
  if (std::isfinite(rc.sdp_s) && rc.sdp_s > rc.total_s) {
    throw InvalidArgument("--sdp-time exceeds --time-limit");
  }
  SolveConfig cfg;
  cfg.method = parse_method(rc.method);
  cfg.rule = rc.rule == "pc1" ? QuadratizationRule::LeadingPair
                              : QuadratizationRule::ConsecutivePairs;
  cfg.sdp_tol = rc.sdp_tol;
  cfg.qp_tol = rc.qp_tol;
  cfg.psd_tol = rc.psd_tol;
  cfg.sdp_time_s = std::min(rc.sdp_s, rc.total_s);
  cfg.total_time_s = rc.total_s;
  if (rc.cap4 > 0) cfg.equalities.cap4 = rc.cap4;
  cfg.workers = rc.workers;
  if (rc.verbose) cfg.log = &std::cerr;
  return cfg;
}

// Loaded instance in the 0/1 domain, with the symmetry fix when requested.
struct Instance {
  Polynomial original;
  Polynomial poly;
  std::optional<SymmetryFix> fix;

  Assignment to_original(const Assignment& a) const {
    return fix ? fix->expand(a) : a;
  }
};

Instance load(const RunConfig& rc) {
  Instance in;
  in.original = load_instance(rc.instance);
  in.poly = in.original.domain() == Domain::PlusMinusOne ? to_binary(in.original)
                                                          : in.original;
  if (rc.fix_sym) {
    in.fix = fix_symmetry(in.poly);
    in.poly = in.fix->reduced;
  }
  return in;
}

void emit_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string assignment_string(const Assignment& a) {
  std::string s;
  for (auto b : a) s.push_back(b ? '1' : '0');
  return s;
}

int cmd_gen_labs(int n, int n0, bool to01, bool fix_sym, bool lags,
                 const std::string& out) {
  Polynomial p = gen_labs(n, n0, lags ? LabsTruncation::Lags
                                      : LabsTruncation::InteractionRange);
  // m is reported on the 0/1 form before symmetry fixing.
  const Polynomial binary = to_binary(p);
  const std::size_t m = binary.num_terms();
  const int degree = binary.degree();
  if (to01 || fix_sym) p = binary;
  if (fix_sym) p = fix_symmetry(p).reduced;
  const std::string text = format_instance(p);
  std::ostream& info = out.empty() ? std::cerr : std::cout;
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw InvalidArgument("cannot write " + out);
    f << text;
  }
  info << "n=" << n << " m=" << m << " degree=" << degree;
  if (fix_sym) info << " written_n=" << p.num_vars() << " written_m=" << p.num_terms();
  info << '\n';
  return kExitOk;
}

int cmd_quadratize(const RunConfig& rc, bool dump_equalities) {
  const Instance in = load(rc);
  const SolveConfig cfg = solve_config(rc);
  const Quadratization q = quadratize(in.poly, cfg.rule);
  const QuadraticProgram qp = build_qp(in.poly, q);
  json j = to_json(qp);
  if (dump_equalities) j["equalities"] = to_json(generate_equalities(q, cfg.equalities));
  std::cerr << "n=" << q.n << " N=" << q.N << " aux=" << q.num_aux()
            << " fortet=" << fortet_constraints(q).size() << '\n';
  emit_json(rc.json_out.empty() ? "-" : rc.json_out, j);
  return kExitOk;
}

int cmd_bound(const RunConfig& rc, std::optional<double> ref, const std::string& sdpa) {
  const Instance in = load(rc);
  SolveConfig cfg = solve_config(rc);
  if (cfg.method == Method::Oracle) throw InvalidArgument("bound: oracle has no relaxation");
  if (cfg.method == Method::QpDirect) cfg.method = Method::EigShift;
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(in.poly, cfg);
  if (!sdpa.empty()) {
    std::ofstream f(sdpa);
    if (!f) throw InvalidArgument("cannot write " + sdpa);
    write_sdpa(f, build_sdp(prep.qp, prep.equalities));
  }
  const double lb = continuous_bound(prep.cqp, cfg.qp_tol);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j = {{"method", method_name(cfg.method)},
            {"rule", rc.rule},
            {"n", prep.qp.n},
            {"N", prep.qp.N},
            {"lb_root", lb},
            {"mu", prep.cqp.mu},
            {"t_sdp_s", prep.t_sdp_s},
            {"t_total_s", secs}};
  std::cout << std::setprecision(10) << "n=" << prep.qp.n << " N=" << prep.qp.N
            << " LB=" << lb;
  if (prep.sdp) {
    j["sdp_value"] = prep.sdp->dual_value;
    j["sdp_status"] = sdp_status_name(prep.sdp->status);
    j["sdp_iterations"] = prep.sdp->iterations;
    j["sdp_rows"] = {{"square", prep.sdp->num_square},
                     {"subset", prep.sdp->num_subset},
                     {"product", prep.sdp->num_product},
                     {"union", prep.sdp->num_union}};
    std::cout << " SDP=" << prep.sdp->dual_value << " ("
              << sdp_status_name(prep.sdp->status) << ")";
  }
  if (ref) {
    const Gap g = gap_percent(*ref, lb);
    j["ref"] = *ref;
    j["gap_pct"] = g.value;
    if (g.absolute) j["gap_absolute"] = true;
    std::cout << " gap=" << g.value << (g.absolute ? " (absolute)" : "%");
  }
  std::cout << '\n';
  emit_json(rc.json_out, j);
  if (prep.sdp && prep.sdp->status == SdpStatus::IterLimit) return kExitTimeLimit;
  return kExitOk;
}

int cmd_solve(const RunConfig& rc) {
  const Instance in = load(rc);
  const BnBResult r = solve(in.poly, solve_config(rc));
  json j = to_json(r);
  j["assignment_original"] = json::array();
  for (auto b : in.to_original(r.best_assignment)) {
    j["assignment_original"].push_back(static_cast<int>(b));
  }
  std::cout << std::setprecision(10) << "status=" << bnb_status_name(r.status)
            << " best=" << r.best_value << " lb_root=" << r.lb_root
            << " lb_final=" << r.lb_final << " gap_root=" << r.gap_root.value
            << (r.gap_root.absolute ? "(abs)" : "%") << " nodes=" << r.nodes
            << " t=" << r.t_total_s << "s\n"
            << "x=" << assignment_string(in.to_original(r.best_assignment)) << '\n';
  emit_json(rc.json_out, j);
  return r.status == BnBStatus::TimeLimit ? kExitTimeLimit : kExitOk;
}

int cmd_verify(const RunConfig& rc) {
  const Instance in = load(rc);
  SolveConfig cfg = solve_config(rc);
  if (cfg.method == Method::Oracle) cfg.method = Method::PQCR;
  const BnBResult r = solve(in.poly, cfg);
  BruteForceOptions bo;
  bo.workers = rc.workers;
  const BruteForceResult bf = brute_force(in.poly, bo);
  const double opt = static_cast<double>(bf.value);
  const bool value_ok = r.best_value == opt;
  const bool incumbent_ok =
      evaluate(in.poly, r.best_assignment) == static_cast<Coef>(r.best_value);
  const bool bound_ok = r.lb_root <= opt + 1e-6 && r.lb_final <= opt + 1e-6;
  bool null_ok = true;
  const Quadratization q = quadratize(in.poly, cfg.rule);
  if (q.n <= 14) null_ok = check_null(generate_equalities(q, cfg.equalities), q).empty();

  std::cout << std::setprecision(10) << "oracle=" << opt << " " << method_name(cfg.method)
            << "=" << r.best_value << " lb_root=" << r.lb_root << '\n'
            << "value " << (value_ok ? "ok" : "MISMATCH") << ", incumbent "
            << (incumbent_ok ? "ok" : "INVALID") << ", bounds "
            << (bound_ok ? "ok" : "INVALID") << ", equalities "
            << (null_ok ? "ok" : "NONZERO") << '\n';
  json j = to_json(r);
  j["oracle"] = opt;
  j["verified"] = value_ok && incumbent_ok && bound_ok && null_ok;
  emit_json(rc.json_out, j);
  return j["verified"].get<bool>() ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial binary optimization by convex quadratic reformulation"};
  app.require_subcommand(1);

  RunConfig rc;
  try {
    env_override("PQCR_SDP_TOL", rc.sdp_tol);
    env_override("PQCR_QP_TOL", rc.qp_tol);
    env_override("PQCR_PSD_TOL", rc.psd_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  int n = 0, n0 = 0;
  bool to01 = false, gen_fix = false, lags = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-labs", "Write a truncated LABS instance");
  gen->add_option("n", n, "Sequence length")->required();
  gen->add_option("n0", n0, "Truncation parameter")->required();
  gen->add_flag("--to01", to01, "Convert to 0/1 variables");
  gen->add_flag("--fix-sym", gen_fix, "Convert to 0/1 and fix one variable");
  gen->add_flag("--lags", lags, "Truncate by lag count instead of interaction range");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  bool dump_eq = false;
  auto* quad = app.add_subcommand("quadratize", "Emit the quadratized program as JSON");
  add_common(quad, rc, false);
  quad->add_flag("--dump-equalities", dump_eq, "Include the equality families");

  std::optional<double> ref;
  std::string sdpa;
  auto* bound = app.add_subcommand("bound", "Root lower bound without branching");
  add_common(bound, rc, true);
  bound->add_option("--ref", ref, "Reference value for the gap");
  bound->add_option("--sdpa", sdpa, "Export the SDP in SDPA sparse format");

  auto* solve_cmd = app.add_subcommand("solve", "Solve to optimality");
  add_common(solve_cmd, rc, true);

  auto* verify = app.add_subcommand("verify", "Cross-check a method against enumeration");
  add_common(verify, rc, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen_labs(n, n0, to01, gen_fix, lags, gen_out);
    if (*quad) return cmd_quadratize(rc, dump_eq);
    if (*bound) return cmd_bound(rc, ref, sdpa);
    if (*solve_cmd) return cmd_solve(rc);
    if (*verify) return cmd_verify(rc);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

// blochapprox CLI: closed-form solvers, hull-projection oracle, three-gate
// decomposition, uncertainty reports, randomized verification and parameter
// sweeps, with deterministic JSON/CSV output.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
// 3 analytic path unsupported for the given input (no --oracle-fallback).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blochapprox/blochapprox.hpp"

namespace ba = blochapprox;

namespace {

// ---------------------------------------------------------------------------
// Output formatting. Numbers carry 17 significant digits (round-trip exact);
// key order is fixed, so identical inputs produce byte-identical output.

std::string fmt(double v) {
  if (!std::isfinite(v)) return "null";  // JSON has no infinity
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string jstr(const std::string& s) { return "\"" + s + "\""; }

std::string jarr(const std::vector<std::string>& elems) {
  std::string out = "[";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ",";
    out += elems[i];
  }
  return out + "]";
}

std::string jnums(const std::vector<double>& v) {
  std::vector<std::string> e;
  e.reserve(v.size());
  for (double x : v) e.push_back(fmt(x));
  return jarr(e);
}

using Fields = std::vector<std::pair<std::string, std::string>>;

std::string jobj(const Fields& fields) {
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ",";
    out += jstr(fields[i].first) + ":" + fields[i].second;
  }
  return out + "}";
}

void emit_line(const std::string& s) { std::fputs((s + "\n").c_str(), stdout); }

void emit_error(const std::string& msg) {
  std::fputs((jobj({{"error", jstr(msg)}}) + "\n").c_str(), stderr);
}

std::string free_params_json(const ba::WeightFamily& f) {
  std::vector<std::string> ps;
  for (const auto& p : f.params) {
    ps.push_back(jobj({{"name", jstr(p.name)}, {"min", fmt(p.lower)}, {"max", fmt(p.upper)}}));
  }
  return jarr(ps);
}

// ---------------------------------------------------------------------------
// Shared option bag.

struct Options {
  double a = 0.0, k = 0.0, phi = 0.0;
  double alpha = 0.0, beta = 0.0, theta = 0.0, vartheta = 0.0;
  bool has_alpha = false, has_beta = false, has_theta = false, has_vartheta = false;
  std::string set = "sprime";
  std::string out = "json";
  bool deg = false;
  bool oracle_fallback = false;
  bool ranges = false;
  std::uint64_t seed = 42;
  std::int64_t samples = 10000;
  int grid = 0;
  std::string suite = "all";
  std::string axis1, axis2;
  double from1 = 0.0, to1 = 0.0, from2 = 0.0, to2 = 0.0;
};

constexpr double kDegToRad = ba::pi / 180.0;

void apply_degrees(Options& o) {
  if (!o.deg) return;
  o.phi *= kDegToRad;
  o.alpha *= kDegToRad;
  o.beta *= kDegToRad;
  o.theta *= kDegToRad;
  o.vartheta *= kDegToRad;
}

bool is_angle_axis(const std::string& name) {
  return name == "phi" || name == "theta" || name == "vartheta";
}

Fields input_fields(const Options& o, bool with_set = true) {
  Fields f{{"a", fmt(o.a)}, {"k", fmt(o.k)}, {"phi", fmt(o.phi)}};
  if (with_set) f.emplace_back("set", jstr(o.set));
  if (o.has_alpha) f.emplace_back("alpha", fmt(o.alpha));
  if (o.has_beta) f.emplace_back("beta", fmt(o.beta));
  if (o.has_theta) f.emplace_back("theta", fmt(o.theta));
  if (o.has_vartheta) f.emplace_back("vartheta", fmt(o.vartheta));
  return f;
}

// Builds the requested basis set; gate-defined kinds are reduced to canonical
// form together with the state.
std::pair<ba::QubitState, ba::BasisSet> canonical_problem(const ba::QubitState& s,
                                                          const Options& o) {
  if (o.set == "sprime") {
    if (!o.has_theta) throw ba::ContractViolationError("--theta is required for --set sprime");
    return {s, ba::basis_sprime(o.theta)};
  }
  if (o.set == "sdoubleprime") {
    if (!o.has_vartheta) {
      throw ba::ContractViolationError("--vartheta is required for --set sdoubleprime");
    }
    return {s, ba::basis_sdoubleprime(o.vartheta)};
  }
  if (o.set == "stripleprime") {
    if (!o.has_theta) {
      throw ba::ContractViolationError("--theta is required for --set stripleprime");
    }
    return {s, ba::basis_stripleprime(o.theta)};
  }
  if (o.set == "s1") {
    if (!o.has_alpha || !o.has_beta) {
      throw ba::ContractViolationError("--alpha and --beta are required for --set s1");
    }
    return ba::reduce_problem(s, ba::basis_s1(o.alpha, o.beta));
  }
  if (o.set == "s2") {
    if (!o.has_beta) throw ba::ContractViolationError("--beta is required for --set s2");
    return ba::reduce_problem(s, ba::basis_s2(o.beta));
  }
  if (o.set == "s3") {
    if (!o.has_alpha) throw ba::ContractViolationError("--alpha is required for --set s3");
    return ba::reduce_problem(s, ba::basis_s3(o.alpha));
  }
  if (o.set == "threegate") {
    if (!o.has_alpha || !o.has_beta) {
      throw ba::ContractViolationError("--alpha and --beta are required for --set threegate");
    }
    return ba::reduce_problem(s, ba::basis_three_gate(o.alpha, o.beta));
  }
  throw ba::ContractViolationError("unknown --set: " + o.set);
}

// ---------------------------------------------------------------------------
// approx: closed-form solver with oracle cross-check.

int cmd_approx(Options& o) {
  apply_degrees(o);
  const ba::QubitState raw = ba::make_state(o.a, o.k, o.phi);
  auto [state, set] = canonical_problem(raw, o);
  if (set.kind == ba::BasisKind::STriplePrime || set.kind == ba::BasisKind::ThreeGate) {
    throw ba::ContractViolationError("approx handles four-state sets; use `decompose` or `oracle`");
  }
  const ba::OracleSolution oracle = ba::project_state(state, set);

  std::string case_label;
  double distance = 0.0;
  std::vector<double> weights;
  std::string free_params = "[]";
  try {
    const ba::ApproxResult res = set.kind == ba::BasisKind::SPrime
                                     ? ba::solve_type1(state, set.theta)
                                     : ba::solve_type2(state, set.vartheta);
    case_label = ba::to_string(res.case_label);
    distance = res.distance;
    weights = res.weights.representative;
    free_params = free_params_json(res.weights);
  } catch (const std::domain_error& e) {
    if (!o.oracle_fallback) {
      emit_error(e.what());
      return 3;
    }
    case_label = "oracle";
    distance = oracle.distance;
    weights = oracle.weights;
  }

  if (o.out == "csv") {
    std::string head = "case,distance,oracle_distance";
    std::string row = case_label + "," + fmt(distance) + "," + fmt(oracle.distance);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      head += ",w" + std::to_string(i);
      row += "," + fmt(weights[i]);
    }
    emit_line(head);
    emit_line(row);
    return 0;
  }
  emit_line(jobj({{"input", jobj(input_fields(o))},
                  {"case", jstr(case_label)},
                  {"distance", fmt(distance)},
                  {"oracle_distance", fmt(oracle.distance)},
                  {"weights", jnums(weights)},
                  {"free_params", free_params}}));
  return 0;
}

// ---------------------------------------------------------------------------
// oracle: exact hull projection for any of the sets, no canonicalization.

int cmd_oracle(Options& o) {
  apply_degrees(o);
  const ba::QubitState state = ba::make_state(o.a, o.k, o.phi);
  ba::BasisSet set = [&] {
    if (o.set == "s1") return ba::basis_s1(o.alpha, o.beta);
    if (o.set == "s2") return ba::basis_s2(o.beta);
    if (o.set == "s3") return ba::basis_s3(o.alpha);
    if (o.set == "threegate") return ba::basis_three_gate(o.alpha, o.beta);
    if (o.set == "sprime") return ba::basis_sprime(o.theta);
    if (o.set == "sdoubleprime") return ba::basis_sdoubleprime(o.vartheta);
    if (o.set == "stripleprime") return ba::basis_stripleprime(o.theta);
    throw ba::ContractViolationError("unknown --set: " + o.set);
  }();
  const ba::OracleSolution sol = ba::project_state(state, set);
  std::vector<std::string> support;
  for (int i : sol.active_support) support.push_back(std::to_string(i));
  emit_line(jobj({{"input", jobj(input_fields(o))},
                  {"case", jstr("oracle")},
                  {"distance", fmt(sol.distance)},
                  {"oracle_distance", fmt(sol.distance)},
                  {"weights", jnums(sol.weights)},
                  {"free_params", "[]"},
                  {"active_support", jarr(support)},
                  {"kkt_residual", fmt(sol.kkt_residual)}}));
  return 0;
}

// ---------------------------------------------------------------------------
// decompose: three-gate decomposability criterion and weight family.

int cmd_decompose(Options& o) {
  apply_degrees(o);
  const ba::QubitState state = ba::make_state(o.a, o.k, o.phi);
  std::optional<double> theta;
  if (o.has_theta) theta = o.theta;
  ba::DecompResult res;
  try {
    res = ba::decompose_three_gates(state, theta);
  } catch (const std::domain_error& e) {
    emit_error(e.what());
    return 3;
  }
  Fields f{{"input", jobj(input_fields(o, false))},
           {"decomposable", res.decomposable ? "true" : "false"},
           {"criterion_lhs", fmt(res.criterion_lhs)},
           {"criterion_rhs", fmt(res.criterion_rhs)}};
  if (res.tan_theta.empty) {
    f.emplace_back("tan_theta_min", "null");
    f.emplace_back("tan_theta_max", "null");
  } else {
    f.emplace_back("tan_theta_min", fmt(res.tan_theta.lo));
    f.emplace_back("tan_theta_max", fmt(res.tan_theta.hi));
  }
  if (o.has_theta) {
    f.emplace_back("theta_admissible", res.theta_admissible ? "true" : "false");
  }
  f.emplace_back("weights", res.weights ? jnums(res.weights->representative) : "[]");
  f.emplace_back("free_params", res.weights ? free_params_json(*res.weights) : "[]");
  emit_line(jobj(f));
  return 0;
}

// ---------------------------------------------------------------------------
// uncertainty: variance report, optional equality relation and angle windows.

int cmd_uncertainty(Options& o) {
  apply_degrees(o);
  const ba::QubitState state = ba::make_state(o.a, o.k, o.phi);
  ba::UncertaintyReport r;
  if (o.has_theta && o.has_vartheta) {
    r = ba::equality_relation(state, o.theta, o.vartheta);
  } else {
    r = ba::report(state);
  }
  Fields f{{"input", jobj(input_fields(o, false))},
           {"dS", jnums({r.dSx, r.dSy, r.dSz})},
           {"absS", jnums({r.absSx, r.absSy, r.absSz})},
           {"lhs18", fmt(r.lhs18)},
           {"rhs18", fmt(r.rhs18)},
           {"f1", fmt(r.f1)},
           {"f2", fmt(r.f2)}};
  if (o.has_theta && o.has_vartheta) {
    f.emplace_back("applicable", r.applicable ? "true" : "false");
    f.emplace_back("m0", r.m0 ? fmt(*r.m0) : "null");
    f.emplace_back("m1", r.m1 ? fmt(*r.m1) : "null");
    f.emplace_back("m2", r.m2 ? fmt(*r.m2) : "null");
    f.emplace_back("lhs19", r.lhs19 ? fmt(*r.lhs19) : "null");
    f.emplace_back("rhs19", r.rhs19 ? fmt(*r.rhs19) : "null");
  }
  if (o.ranges) {
    const int grid = o.grid > 0 ? o.grid : 2048;
    const ba::ValidityRanges vr = ba::validity_ranges(state, grid);
    const auto ivals = [](const std::vector<ba::Interval>& v) {
      std::vector<std::string> e;
      for (const auto& iv : v) e.push_back(jarr({fmt(iv.lo), fmt(iv.hi)}));
      return jarr(e);
    };
    f.emplace_back("theta_intervals", ivals(vr.theta));
    f.emplace_back("vartheta_intervals", ivals(vr.vartheta));
  }
  emit_line(jobj(f));
  return 0;
}

// ---------------------------------------------------------------------------
// verify: randomized analytic-vs-oracle and uncertainty property suites.

int cmd_verify(const Options& o) {
  ba::VerifyOptions vo;
  vo.seed = o.seed;
  vo.samples = o.samples;
  if (o.suite == "core") {
    vo.suite = ba::VerifySuite::Core;
  } else if (o.suite == "uncertainty") {
    vo.suite = ba::VerifySuite::Uncertainty;
  } else if (o.suite == "all") {
    vo.suite = ba::VerifySuite::All;
  } else {
    throw ba::ContractViolationError("unknown --suite: " + o.suite);
  }
  const ba::VerifySummary s = ba::run_verification(vo);
  const std::string worst =
      jobj({{"a", fmt(s.worst.a)},
            {"k", fmt(s.worst.k)},
            {"phi", fmt(s.worst.phi)},
            {"theta", fmt(s.worst.theta)},
            {"vartheta", fmt(s.worst.vartheta)},
            {"index", std::to_string(s.worst.index)}});
  emit_line(jobj({{"input", jobj({{"seed", std::to_string(o.seed)},
                                  {"samples", std::to_string(o.samples)},
                                  {"suite", jstr(o.suite)}})},
                  {"samples", std::to_string(s.samples)},
                  {"max_distance_discrepancy", fmt(s.max_distance_discrepancy)},
                  {"max_representative_gap", fmt(s.max_representative_gap)},
                  {"max_kkt_residual", fmt(s.max_kkt_residual)},
                  {"max_weight_violation", fmt(s.max_weight_violation)},
                  {"max_family_spread", fmt(s.max_family_spread)},
                  {"boundary_checks", std::to_string(s.boundary_checks)},
                  {"max_boundary_gap", fmt(s.max_boundary_gap)},
                  {"relation18_checked", std::to_string(s.relation18_checked)},
                  {"relation18_violations", std::to_string(s.relation18_violations)},
                  {"pass", s.pass ? "true" : "false"},
                  {"worst", worst}}));
  return s.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep: two-axis grid, CSV stream `axis1,axis2,case,distance,oracle_distance`.

struct SweepPoint {
  std::string case_label;
  double distance = 0.0;
  double oracle = 0.0;
};

int cmd_sweep(Options& o) {
  apply_degrees(o);
  if (o.deg) {
    if (is_angle_axis(o.axis1)) {
      o.from1 *= kDegToRad;
      o.to1 *= kDegToRad;
    }
    if (is_angle_axis(o.axis2)) {
      o.from2 *= kDegToRad;
      o.to2 *= kDegToRad;
    }
  }
  const std::vector<std::string> axes = {"a", "k", "phi", "theta", "vartheta"};
  const auto is_axis = [&](const std::string& n) {
    return std::find(axes.begin(), axes.end(), n) != axes.end();
  };
  if (!is_axis(o.axis1) || !is_axis(o.axis2)) {
    throw ba::ContractViolationError("unknown axis; choose from a,k,phi,theta,vartheta");
  }
  if (o.axis1 == o.axis2) throw ba::ContractViolationError("axes must differ");
  if (o.grid < 2) throw ba::ContractViolationError("--grid must be at least 2");

  // Which solver runs at each grid point.
  bool use_theta = o.axis1 == "theta" || o.axis2 == "theta" || o.has_theta;
  bool use_vartheta = o.axis1 == "vartheta" || o.axis2 == "vartheta" || o.has_vartheta;
  if (o.set == "sprime") use_vartheta = false;
  if (o.set == "sdoubleprime") use_theta = false;
  if (o.set == "pair") {
    use_theta = use_vartheta = true;
  }
  if (!use_theta && !use_vartheta) {
    throw ba::ContractViolationError("provide --theta or --vartheta (or use them as axes)");
  }
  for (const std::string& axis : {o.axis1, o.axis2}) {
    if (axis == "theta" && !use_theta) {
      throw ba::ContractViolationError("axis theta is unused with --set " + o.set);
    }
    if (axis == "vartheta" && !use_vartheta) {
      throw ba::ContractViolationError("axis vartheta is unused with --set " + o.set);
    }
  }

  // Validate every grid value up front; no partial CSV on bad input.
  const auto axis_range_ok = [&](const std::string& name, double lo, double hi) {
    if (name == "a") return lo >= 0.0 && hi <= 1.0 && (o.oracle_fallback || hi <= 0.5 + 1e-12);
    if (name == "k") return lo >= 0.0 && hi <= 1.0;
    if (name == "phi") {
      return o.oracle_fallback || (lo >= 0.0 && hi <= 0.5 * ba::pi + 1e-12);
    }
    if (name == "theta") {
      return lo > 0.0 && (o.oracle_fallback ? hi < ba::pi : hi <= 0.5 * ba::pi + 1e-12);
    }
    return lo > 0.0 && hi < ba::pi;  // vartheta
  };
  const auto check_axis = [&](const std::string& name, double lo, double hi) {
    if (lo > hi) throw ba::ContractViolationError("axis range for " + name + " is reversed");
    if (!axis_range_ok(name, lo, hi)) {
      throw ba::ContractViolationError(
          "axis range for " + name +
          " leaves the supported domain (pass --oracle-fallback for non-canonical sweeps)");
    }
  };
  check_axis(o.axis1, o.from1, o.to1);
  check_axis(o.axis2, o.from2, o.to2);
  const auto fixed_ok = [&](const std::string& name, double v, bool used) {
    if (used) check_axis(name, v, v);
  };
  fixed_ok("a", o.a, o.axis1 != "a" && o.axis2 != "a");
  fixed_ok("k", o.k, o.axis1 != "k" && o.axis2 != "k");
  fixed_ok("phi", o.phi, o.axis1 != "phi" && o.axis2 != "phi");
  if (use_theta && o.axis1 != "theta" && o.axis2 != "theta") check_axis("theta", o.theta, o.theta);
  if (use_vartheta && o.axis1 != "vartheta" && o.axis2 != "vartheta") {
    check_axis("vartheta", o.vartheta, o.vartheta);
  }

  const int n = o.grid;
  const std::int64_t total = static_cast<std::int64_t>(n) * n;
  std::vector<SweepPoint> rows(total);

  const auto value_at = [](double from, double to, int i, int grid) {
    return from + (to - from) * i / (grid - 1);
  };
  ba::parallel_chunks(total, [&](int, std::int64_t b, std::int64_t e) {
    for (std::int64_t idx = b; idx < e; ++idx) {
      const int i = static_cast<int>(idx / n);
      const int j = static_cast<int>(idx % n);
      double a = o.a, k = o.k, phi = o.phi, theta = o.theta, vartheta = o.vartheta;
      const auto assign = [&](const std::string& name, double v) {
        if (name == "a") a = v;
        else if (name == "k") k = v;
        else if (name == "phi") phi = v;
        else if (name == "theta") theta = v;
        else vartheta = v;
      };
      assign(o.axis1, value_at(o.from1, o.to1, i, n));
      assign(o.axis2, value_at(o.from2, o.to2, j, n));
      const ba::QubitState st = ba::make_state(a, k, phi);
      SweepPoint& pt = rows[idx];
      try {
        if (use_theta && use_vartheta) {
          const ba::ApproxResult r1 = ba::solve_type1(st, theta);
          const ba::ApproxResult r2 = ba::solve_type2(st, vartheta);
          pt.case_label = std::string(ba::to_string(r1.case_label)) + "+" +
                          ba::to_string(r2.case_label);
          pt.distance = r1.distance;
          pt.oracle = ba::oracle_distance(st, ba::basis_sprime(theta));
        } else if (use_theta) {
          const ba::ApproxResult r = ba::solve_type1(st, theta);
          pt.case_label = ba::to_string(r.case_label);
          pt.distance = r.distance;
          pt.oracle = ba::oracle_distance(st, ba::basis_sprime(theta));
        } else {
          const ba::ApproxResult r = ba::solve_type2(st, vartheta);
          pt.case_label = ba::to_string(r.case_label);
          pt.distance = r.distance;
          pt.oracle = ba::oracle_distance(st, ba::basis_sdoubleprime(vartheta));
        }
      } catch (const std::domain_error&) {
        // Pre-validation guarantees this only happens with --oracle-fallback.
        const ba::BasisSet set =
            use_theta ? ba::basis_sprime(theta) : ba::basis_sdoubleprime(vartheta);
        pt.case_label = "oracle";
        pt.oracle = pt.distance = ba::oracle_distance(st, set);
      }
    }
  });

  std::string out = "axis1,axis2,case,distance,oracle_distance\n";
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const int i = static_cast<int>(idx / n);
    const int j = static_cast<int>(idx % n);
    out += fmt(value_at(o.from1, o.to1, i, n)) + "," + fmt(value_at(o.from2, o.to2, j, n)) +
           "," + rows[idx].case_label + "," + fmt(rows[idx].distance) + "," +
           fmt(rows[idx].oracle) + "\n";
  }
  std::fputs(out.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal convex approximation of qubit states by eigenstates of real quantum logic gates"};
  app.require_subcommand(1);
  Options o;

  const auto add_state = [&](CLI::App* c, bool required = true) {
    auto* oa = c->add_option("--a", o.a, "state parameter a in [0,1]");
    auto* ok = c->add_option("--k", o.k, "state parameter k in [0,1]");
    auto* op = c->add_option("--phi", o.phi, "state phase phi (radians unless --deg)");
    if (required) {
      oa->required();
      ok->required();
      op->required();
    }
    c->add_flag("--deg", o.deg, "interpret all angles in degrees");
  };
  const auto add_angles = [&](CLI::App* c) {
    c->add_option("--alpha", o.alpha, "first gate angle");
    c->add_option("--beta", o.beta, "second gate angle");
    c->add_option("--theta", o.theta, "canonical set angle theta");
    c->add_option("--vartheta", o.vartheta, "canonical set angle vartheta");
  };

  auto* approx = app.add_subcommand("approx", "closed-form optimal approximation with oracle cross-check");
  add_state(approx);
  add_angles(approx);
  approx->add_option("--set", o.set, "sprime|sdoubleprime|s1|s2|s3");
  approx->add_option("--out", o.out, "json|csv");
  approx->add_flag("--oracle-fallback", o.oracle_fallback,
                   "route unsupported inputs to the oracle instead of failing");

  auto* oracle = app.add_subcommand("oracle", "exact hull-projection distance");
  add_state(oracle);
  add_angles(oracle);
  oracle->add_option("--set", o.set, "sprime|sdoubleprime|stripleprime|s1|s2|s3|threegate");

  auto* decompose = app.add_subcommand("decompose", "three-gate decomposability and weight family");
  add_state(decompose);
  decompose->add_option("--theta", o.theta, "evaluate the weight family at this theta");

  auto* uncertainty = app.add_subcommand("uncertainty", "variance report and equality relation");
  add_state(uncertainty);
  uncertainty->add_option("--theta", o.theta, "Type I angle for the equality relation");
  uncertainty->add_option("--vartheta", o.vartheta, "Type II angle for the equality relation");
  uncertainty->add_flag("--ranges", o.ranges, "report case-i validity windows");
  uncertainty->add_option("--grid", o.grid, "grid for --ranges (default 2048)");

  auto* verify = app.add_subcommand("verify", "randomized analytic-vs-oracle property suite");
  verify->add_option("--samples", o.samples, "number of random samples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--suite", o.suite, "core|uncertainty|all");

  auto* sweep = app.add_subcommand("sweep", "two-axis grid sweep, CSV on stdout");
  add_state(sweep, /*required=*/false);
  add_angles(sweep);
  sweep->add_option("--set", o.set, "sprime|sdoubleprime|pair");
  sweep->add_option("--axis1", o.axis1, "first axis: a|k|phi|theta|vartheta")->required();
  sweep->add_option("--from1", o.from1)->required();
  sweep->add_option("--to1", o.to1)->required();
  sweep->add_option("--axis2", o.axis2, "second axis")->required();
  sweep->add_option("--from2", o.from2)->required();
  sweep->add_option("--to2", o.to2)->required();
  sweep->add_option("--grid", o.grid, "points per axis")->required();
  sweep->add_flag("--oracle-fallback", o.oracle_fallback,
                  "route non-canonical grid points to the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(e.what());
    return 2;
  }

  o.has_alpha = approx->count("--alpha") || oracle->count("--alpha") || sweep->count("--alpha");
  o.has_beta = approx->count("--beta") || oracle->count("--beta") || sweep->count("--beta");
  o.has_theta = approx->count("--theta") || oracle->count("--theta") ||
                decompose->count("--theta") || uncertainty->count("--theta") ||
                sweep->count("--theta");
  o.has_vartheta = approx->count("--vartheta") || oracle->count("--vartheta") ||
                   uncertainty->count("--vartheta") || sweep->count("--vartheta");

  try {
    if (approx->parsed()) return cmd_approx(o);
    if (oracle->parsed()) return cmd_oracle(o);
    if (decompose->parsed()) return cmd_decompose(o);
    if (uncertainty->parsed()) return cmd_uncertainty(o);
    if (verify->parsed()) return cmd_verify(o);
    if (sweep->parsed()) return cmd_sweep(o);
  } catch (const ba::CanonicalizationError& e) {
    emit_error(e.what());
    return 3;
  } catch (const ba::UnsupportedAngleError& e) {
    emit_error(e.what());
    return 3;
  } catch (const std::exception& e) {
    emit_error(e.what());
    return 2;
  }
  return 2;
}

#pragma once

// Randomized cross-validation of the closed-form solvers against the oracle,
// shared by the CLI `verify` command and the acceptance suite. Per-sample
// randomness is derived from (seed, index), so results do not depend on how
// samples are partitioned across workers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "blochapprox/analytic.hpp"
#include "blochapprox/gates.hpp"
#include "blochapprox/oracle.hpp"
#include "blochapprox/rng.hpp"
#include "blochapprox/state.hpp"
#include "blochapprox/uncertainty.hpp"

namespace blochapprox {

// Worker cap: BLOCHAPPROX_THREADS when set (positive), else the hardware count.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("BLOCHAPPROX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) hw = std::min<long>(hw, v);
  }
  return hw;
}

// Static block partition; `fn(worker, begin, end)` runs on each worker's
// slice. Callers must make per-index work independent of execution order.
template <typename Fn>
inline void parallel_chunks(std::int64_t count, Fn fn) {
  const int workers =
      static_cast<int>(std::min<std::int64_t>(worker_count(), std::max<std::int64_t>(count, 1)));
  if (workers <= 1) {
    fn(0, std::int64_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t b = w * chunk;
    const std::int64_t e = std::min<std::int64_t>(b + chunk, count);
    if (b >= e) break;
    pool.emplace_back(fn, w, b, e);
  }
  for (auto& th : pool) th.join();
}

inline QubitState random_canonical_state(Rng& rng) {
  return make_state(rng.uniform(0.0, 0.5), rng.next_double(),
                    rng.uniform(0.0, 0.5 * pi));
}

// Angle draws stay a hair away from the degenerate basis limits, where the
// set collapses and the hull projection is numerically meaningless.
inline double random_theta(Rng& rng) { return rng.uniform(1e-3, 0.5 * pi); }
inline double random_vartheta(Rng& rng) { return rng.uniform(1e-3, pi - 1e-3); }

// Oracle-side decomposability verdict: minimum six-state hull distance over
// theta, by grid scan plus golden-section refinement around the best bracket.
inline double min_hull_distance_over_theta(const QubitState& s, int grid = 1024) {
  const double lo_dom = 1e-6, hi_dom = 0.5 * pi;
  const auto dist_at = [&](double theta) {
    return project_state(s, basis_stripleprime(theta)).distance;
  };
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= grid; ++i) {
    const double theta = lo_dom + (hi_dom - lo_dom) * i / grid;
    const double d = dist_at(theta);
    if (d < best) {
      best = d;
      best_i = i;
    }
    if (best < 1e-12) return best;
  }
  double lo = lo_dom + (hi_dom - lo_dom) * std::max(0, best_i - 1) / grid;
  double hi = lo_dom + (hi_dom - lo_dom) * std::min(grid, best_i + 1) / grid;
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double m1 = hi - invphi * (hi - lo), m2 = lo + invphi * (hi - lo);
  double f1 = dist_at(m1), f2 = dist_at(m2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - invphi * (hi - lo);
      f1 = dist_at(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + invphi * (hi - lo);
      f2 = dist_at(m2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

enum class VerifySuite { Core, Uncertainty, All };

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::int64_t samples = 10000;
  VerifySuite suite = VerifySuite::All;
};

struct SampleParams {
  double a = 0.0, k = 0.0, phi = 0.0, theta = 0.0, vartheta = 0.0;
  std::int64_t index = -1;
};

struct VerifySummary {
  std::int64_t samples = 0;
  // Core suite.
  double max_distance_discrepancy = 0.0;  // analytic vs oracle, both types
  double max_representative_gap = 0.0;    // |direct(representative) - oracle|
  double max_kkt_residual = 0.0;          // oracle solution certificates
  double max_weight_violation = 0.0;      // negativity / sum deviation
  double max_family_spread = 0.0;         // distance spread across a family
  std::int64_t boundary_checks = 0;
  double max_boundary_gap = 0.0;
  // Uncertainty suite.
  std::int64_t relation18_checked = 0;
  std::int64_t relation18_violations = 0;
  double max_relation18_deficit = 0.0;
  bool pass = false;
  SampleParams worst;  // sample attaining max_distance_discrepancy
};

namespace detail {

struct WorkerAccum {
  VerifySummary s;

  void distance_gap(double gap, const SampleParams& p) {
    if (gap > s.max_distance_discrepancy) {
      s.max_distance_discrepancy = gap;
      s.worst = p;
    }
  }
  void merge(const WorkerAccum& o) {
    if (o.s.max_distance_discrepancy > s.max_distance_discrepancy ||
        (o.s.max_distance_discrepancy == s.max_distance_discrepancy &&
         o.s.worst.index >= 0 && o.s.worst.index < s.worst.index)) {
      s.max_distance_discrepancy = o.s.max_distance_discrepancy;
      s.worst = o.s.worst;
    }
    s.max_representative_gap = std::max(s.max_representative_gap, o.s.max_representative_gap);
    s.max_kkt_residual = std::max(s.max_kkt_residual, o.s.max_kkt_residual);
    s.max_weight_violation = std::max(s.max_weight_violation, o.s.max_weight_violation);
    s.max_family_spread = std::max(s.max_family_spread, o.s.max_family_spread);
    s.boundary_checks += o.s.boundary_checks;
    s.max_boundary_gap = std::max(s.max_boundary_gap, o.s.max_boundary_gap);
    s.relation18_checked += o.s.relation18_checked;
    s.relation18_violations += o.s.relation18_violations;
    s.max_relation18_deficit = std::max(s.max_relation18_deficit, o.s.max_relation18_deficit);
  }
};

inline void check_family(const ApproxResult& res, const QubitState& st,
                         const BasisSet& set, Rng& rng, WorkerAccum& acc) {
  const double base = distance_direct(st, set, res.weights.representative);
  double dmin = base, dmax = base;
  for (const double w : res.weights.representative) {
    acc.s.max_weight_violation = std::max(acc.s.max_weight_violation, -w);
  }
  for (int draw = 0; draw < 3; ++draw) {
    const std::vector<double> p = sample_admissible(res.weights, rng);
    const std::vector<double> w = res.weights.weights_at(p);
    double sum = 0.0;
    for (const double wi : w) {
      acc.s.max_weight_violation = std::max(acc.s.max_weight_violation, -wi);
      sum += wi;
    }
    acc.s.max_weight_violation = std::max(acc.s.max_weight_violation, std::abs(sum - 1.0));
    const double d = distance_direct(st, set, w);
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  acc.s.max_family_spread = std::max(acc.s.max_family_spread, dmax - dmin);
}

inline void core_sample(std::int64_t i, std::uint64_t seed, WorkerAccum& acc) {
  Rng rng = derived_rng(seed, static_cast<std::uint64_t>(i));
  const QubitState st = random_canonical_state(rng);
  const double theta = random_theta(rng);
  const double vartheta = random_vartheta(rng);
  const SampleParams params{st.a, st.k, st.phi, theta, vartheta, i};

  const BasisSet sp = basis_sprime(theta);
  const ApproxResult r1 = solve_type1(st, theta);
  const OracleSolution o1 = project_state(st, sp);
  acc.s.max_kkt_residual = std::max(acc.s.max_kkt_residual, o1.kkt_residual);
  acc.distance_gap(std::abs(r1.distance - o1.distance), params);
  acc.s.max_representative_gap =
      std::max(acc.s.max_representative_gap,
               std::abs(distance_direct(st, sp, r1.weights.representative) - o1.distance));
  check_family(r1, st, sp, rng, acc);

  const BasisSet sd = basis_sdoubleprime(vartheta);
  const ApproxResult r2 = solve_type2(st, vartheta);
  const OracleSolution o2 = project_state(st, sd);
  acc.s.max_kkt_residual = std::max(acc.s.max_kkt_residual, o2.kkt_residual);
  acc.distance_gap(std::abs(r2.distance - o2.distance), params);
  acc.s.max_representative_gap =
      std::max(acc.s.max_representative_gap,
               std::abs(distance_direct(st, sd, r2.weights.representative) - o2.distance));
  check_family(r2, st, sd, rng, acc);

  // Case-boundary continuity: at tan(theta) equal to either case-i bound the
  // adjacent case formula must give the same distance as the case-i value.
  const double x = st.bloch.x, y = st.bloch.y, z = st.bloch.z;
  if (x > 1e-6) {
    const double t_hi = std::atan((1.0 - z) / x);
    if (t_hi > 1e-6) {
      acc.s.boundary_checks += 1;
      acc.s.max_boundary_gap =
          std::max(acc.s.max_boundary_gap,
                   std::abs(detail::type1_dist_ii(x, y, z, t_hi) - y));
    }
    const double t_lo = std::atan(x / (1.0 + z));
    if (t_lo > 1e-6) {
      acc.s.boundary_checks += 1;
      acc.s.max_boundary_gap =
          std::max(acc.s.max_boundary_gap,
                   std::abs(detail::type1_dist_iii(x, y, z, t_lo) - y));
    }
  }
}

inline void uncertainty_sample(std::int64_t i, std::uint64_t seed, WorkerAccum& acc) {
  Rng rng = derived_rng(seed ^ 0xabcdef12345678ULL, static_cast<std::uint64_t>(i));
  const QubitState st = random_canonical_state(rng);
  const UncertaintyReport r = report(st);
  acc.s.relation18_checked += 1;
  const double deficit = r.rhs18 - r.lhs18;
  if (deficit > 1e-12) {
    acc.s.relation18_violations += 1;
    acc.s.max_relation18_deficit = std::max(acc.s.max_relation18_deficit, deficit);
  }
}

}  // namespace detail

inline VerifySummary run_verification(const VerifyOptions& opt) {
  const int workers = static_cast<int>(
      std::max<std::int64_t>(1, std::min<std::int64_t>(worker_count(), opt.samples)));
  std::vector<detail::WorkerAccum> acc(workers);
  const bool core = opt.suite != VerifySuite::Uncertainty;
  const bool unc = opt.suite != VerifySuite::Core;

  parallel_chunks(opt.samples, [&](int w, std::int64_t b, std::int64_t e) {
    detail::WorkerAccum& a = acc[w];
    for (std::int64_t i = b; i < e; ++i) {
      if (core) detail::core_sample(i, opt.seed, a);
      if (unc) detail::uncertainty_sample(i, opt.seed, a);
    }
  });

  detail::WorkerAccum total;
  total.s.worst.index = std::numeric_limits<std::int64_t>::max();
  for (const auto& a : acc) total.merge(a);
  if (total.s.worst.index == std::numeric_limits<std::int64_t>::max()) {
    total.s.worst.index = -1;
  }
  total.s.samples = opt.samples;
  total.s.pass = total.s.max_distance_discrepancy <= tol.oracle_vs_analytic &&
                 total.s.max_representative_gap <= tol.oracle_vs_analytic &&
                 total.s.max_kkt_residual <= tol.kkt_residual &&
                 total.s.max_weight_violation <= tol.simplex_feasibility &&
                 total.s.max_family_spread <= tol.family_spread &&
                 total.s.max_boundary_gap <= 1e-10 &&
                 total.s.relation18_violations == 0;
  return total.s;
}

}  // namespace blochapprox

#pragma once

// Spin-variance bookkeeping for the triple uncertainty relation
//
//   (dSx)^2 + (dSy)^2 + (dSz)^2  >=  (tau/2) (|<Sx>| + |<Sy>| + |<Sz>|),
//
// its equality form built from the two closed-form distances, the lambda
// maximization that produces the tight constant tau = 2/sqrt(3), and the
// numeric recovery of the angle windows where the equality form applies.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "blochapprox/analytic.hpp"
#include "blochapprox/state.hpp"

namespace blochapprox {

inline const double triple_tau = 2.0 / std::sqrt(3.0);

struct UncertaintyReport {
  double dSx = 0.0, dSy = 0.0, dSz = 0.0;     // spin standard deviations
  double absSx = 0.0, absSy = 0.0, absSz = 0.0;
  double lhs18 = 0.0;  // sum of spin variances
  double rhs18 = 0.0;  // (tau/2) * sum of expectation magnitudes
  double f1 = 0.0;     // squared Bloch length, 4k^2 a(1-a) + (1-2a)^2
  double f2 = 0.0;     // phi-maximized expectation sum, 1/2 - a + k sqrt(2a(1-a))

  // Equality-relation fields; populated by equality_relation when the Type I
  // and Type II case-i conditions both hold at (theta, vartheta).
  bool applicable = false;
  std::optional<double> theta, vartheta;
  std::optional<double> m0, m1, m2;
  std::optional<double> lhs19, rhs19;
};

inline UncertaintyReport report(const QubitState& s) {
  UncertaintyReport r;
  const double x = s.bloch.x, y = s.bloch.y, z = s.bloch.z;
  r.dSx = 0.5 * std::sqrt(std::max(0.0, 1.0 - x * x));
  r.dSy = 0.5 * std::sqrt(std::max(0.0, 1.0 - y * y));
  r.dSz = 0.5 * std::sqrt(std::max(0.0, 1.0 - z * z));
  r.absSx = 0.5 * std::abs(x);
  r.absSy = 0.5 * std::abs(y);
  r.absSz = 0.5 * std::abs(z);
  r.lhs18 = r.dSx * r.dSx + r.dSy * r.dSy + r.dSz * r.dSz;
  r.rhs18 = 0.5 * triple_tau * (r.absSx + r.absSy + r.absSz);
  r.f1 = 4.0 * s.k * s.k * s.a * (1.0 - s.a) + (1.0 - 2.0 * s.a) * (1.0 - 2.0 * s.a);
  r.f2 = 0.5 - s.a + s.k * std::sqrt(2.0 * s.a * (1.0 - s.a));
  return r;
}

struct LambdaScanResult {
  double lambda = 0.0;
  double k = 0.0;
  double a = 0.0;
};

namespace detail {
inline double lambda_objective(double k, double a) {
  const double f1 = 4.0 * k * k * a * (1.0 - a) + (1.0 - 2.0 * a) * (1.0 - 2.0 * a);
  const double f2 = 0.5 - a + k * std::sqrt(2.0 * a * (1.0 - a));
  return 4.0 * f2 / (3.0 - f1);
}
}  // namespace detail

// max over k in [0,1], a in [0,1/2] of 4 f2 / (3 - f1): coarse grid followed
// by a compass polish clamped to the box.
inline LambdaScanResult lambda_scan(int grid_k = 512, int grid_a = 512) {
  if (grid_k < 100 || grid_a < 100) {
    throw ContractViolationError("lambda_scan: grid sizes must be at least 100");
  }
  double best = -1.0, bk = 0.0, ba = 0.0;
  for (int i = 0; i <= grid_k; ++i) {
    const double k = static_cast<double>(i) / grid_k;
    for (int j = 0; j <= grid_a; ++j) {
      const double a = 0.5 * static_cast<double>(j) / grid_a;
      const double v = detail::lambda_objective(k, a);
      if (v > best) {
        best = v;
        bk = k;
        ba = a;
      }
    }
  }
  double step = std::max(1.0 / grid_k, 0.5 / grid_a);
  while (step > 1e-12) {
    bool improved = false;
    const double cand_k[4] = {bk - step, bk + step, bk, bk};
    const double cand_a[4] = {ba, ba, ba - step, ba + step};
    for (int c = 0; c < 4; ++c) {
      const double k = std::clamp(cand_k[c], 0.0, 1.0);
      const double a = std::clamp(cand_a[c], 0.0, 0.5);
      const double v = detail::lambda_objective(k, a);
      if (v > best) {
        best = v;
        bk = k;
        ba = a;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {best, bk, ba};
}

// Equality form: M0, M1, M2 are variance-style quantities built from the gate
// expectation and the two closed-form distances. Only meaningful where both
// case-i conditions hold; anywhere else the report is flagged not applicable.
inline UncertaintyReport equality_relation(const QubitState& s, double theta,
                                           double vartheta) {
  UncertaintyReport r = report(s);
  r.theta = theta;
  r.vartheta = vartheta;
  // The case conditions are only meaningful on the canonical region.
  if (!in_canonical_region(s) ||
      type1_case_i_margin(s, theta) < -tol.case_boundary ||
      type2_case_i_margin(s, vartheta) < -tol.case_boundary) {
    r.applicable = false;
    return r;
  }
  r.applicable = true;
  const double x = s.bloch.x, y = s.bloch.y, z = s.bloch.z;
  const double u2 = std::cos(2.0 * vartheta) * z + std::sin(2.0 * vartheta) * x;
  const double d1 = y;
  const double d2 = detail::type2_dist_i(x, z, u2);
  r.m0 = 0.5 * std::sqrt(std::max(0.0, 1.0 - u2 * u2));
  r.m1 = 0.5 * std::sqrt(std::max(0.0, 1.0 - d1 * d1));
  r.m2 = 0.5 * std::sqrt(std::max(0.0, 1.0 - d2 * d2));
  r.lhs19 = *r.m0 * *r.m0 + *r.m1 * *r.m1 + *r.m2 * *r.m2;
  r.rhs19 = r.rhs18;
  return r;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ValidityRanges {
  std::vector<Interval> theta;     // where the Type I case-i condition holds
  std::vector<Interval> vartheta;  // where the Type II case-i condition holds
};

namespace detail {

// Recovers {angle : margin(angle) >= 0} as a union of closed intervals from a
// grid scan with bisection-refined endpoints (ties resolve toward inclusion).
template <typename MarginFn>
inline std::vector<Interval> margin_intervals(MarginFn margin, double lo, double hi,
                                              int grid) {
  const auto refine = [&](double neg, double pos) {
    for (int it = 0; it < 60; ++it) {
      if (std::abs(pos - neg) < 1e-9) break;
      const double mid = 0.5 * (neg + pos);
      (margin(mid) >= 0.0 ? pos : neg) = mid;
    }
    return pos;
  };
  std::vector<Interval> out;
  const double h = (hi - lo) / grid;
  double prev = lo;
  bool open = margin(lo) >= 0.0;
  double start = lo;
  for (int i = 1; i <= grid; ++i) {
    const double cur = lo + i * h;
    const bool ok = margin(cur) >= 0.0;
    if (ok && !open) {
      start = refine(prev, cur);
      open = true;
    } else if (!ok && open) {
      out.push_back({start, refine(cur, prev)});
      open = false;
    }
    prev = cur;
  }
  if (open) out.push_back({start, hi});
  return out;
}

}  // namespace detail

// theta windows on (0, pi/2] and vartheta windows on (0, pi) where the
// respective case-i conditions hold for this state.
inline ValidityRanges validity_ranges(const QubitState& s, int grid = 2048) {
  if (grid < 1000) {
    throw ContractViolationError("validity_ranges: grid must be at least 1000");
  }
  detail::require_canonical(s, "validity_ranges");
  ValidityRanges vr;
  const double eps = 1e-9;  // keep evaluation off the open endpoints
  vr.theta = detail::margin_intervals(
      [&](double t) { return type1_case_i_margin(s, t); }, eps, 0.5 * pi, grid);
  vr.vartheta = detail::margin_intervals(
      [&](double v) { return type2_case_i_margin(s, v); }, eps, pi - eps, grid);
  return vr;
}

}  // namespace blochapprox

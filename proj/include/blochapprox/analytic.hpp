#pragma once

// Closed-form optimal convex approximations of a canonical-region qubit state
// by the four-state sets SPrime(theta) / SDoublePrime(vartheta), and the
// six-state decomposability criterion with its two-parameter weight family.
//
// The case analysis requires a in [0, 1/2] and phi in [0, pi/2]; outside that
// region the conditions misclassify and the solvers refuse (the oracle module
// covers arbitrary states).

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blochapprox/errors.hpp"
#include "blochapprox/rng.hpp"
#include "blochapprox/state.hpp"
#include "blochapprox/tolerances.hpp"

namespace blochapprox {

enum class CaseLabel { I_i, I_ii, I_iii, II_i, II_ii, II_iii };

inline const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::I_i: return "I_i";
    case CaseLabel::I_ii: return "I_ii";
    case CaseLabel::I_iii: return "I_iii";
    case CaseLabel::II_i: return "II_i";
    case CaseLabel::II_ii: return "II_ii";
    case CaseLabel::II_iii: return "II_iii";
  }
  return "?";
}

enum class SolverFamily { TypeI, TypeII };

struct FreeParam {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
};

// All optimal weight vectors of a solved instance: an affine family
//   w(p) = representative + sum_j p_j * gradient_j
// over box-bounded free parameters; an assignment is admissible when it also
// keeps every weight nonnegative (the box alone is not always tight for the
// two-parameter family).
struct WeightFamily {
  std::vector<double> representative;  // weights at all free parameters = 0
  std::vector<std::vector<double>> gradients;
  std::vector<FreeParam> params;

  std::vector<double> weights_at(std::span<const double> p) const {
    std::vector<double> w = representative;
    for (std::size_t j = 0; j < gradients.size(); ++j) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += p[j] * gradients[j][i];
    }
    return w;
  }

  bool admissible(std::span<const double> p,
                  double feas = tol.simplex_feasibility) const {
    for (std::size_t j = 0; j < params.size(); ++j) {
      if (p[j] < params[j].lower - feas || p[j] > params[j].upper + feas) {
        return false;
      }
    }
    double sum = 0.0;
    for (double w : weights_at(p)) {
      if (w < -feas) return false;
      sum += w;
    }
    return std::abs(sum - 1.0) <= 1e-12;
  }
};

// Draws an admissible assignment: a box sample, shrunk toward zero when the
// joint nonnegativity constraints bite. Weights are affine in the parameters
// and the origin is admissible, so the largest feasible scale is found by
// bisection. The internal slack is tighter than the public feasibility
// tolerance, keeping sampled members strictly inside it.
inline std::vector<double> sample_admissible(const WeightFamily& f, Rng& rng) {
  constexpr double slack = 1e-15;
  std::vector<double> p(f.params.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    p[j] = rng.uniform(f.params[j].lower, f.params[j].upper);
  }
  if (p.empty() || f.admissible(p, slack)) return p;
  double lo = 0.0, hi = 1.0;
  std::vector<double> scaled(p.size());
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    for (std::size_t j = 0; j < p.size(); ++j) scaled[j] = mid * p[j];
    (f.admissible(scaled, slack) ? lo : hi) = mid;
  }
  for (std::size_t j = 0; j < p.size(); ++j) p[j] *= lo;
  return p;
}

struct ApproxResult {
  double distance = 0.0;
  CaseLabel case_label = CaseLabel::I_i;
  WeightFamily weights;
  std::optional<double> mu;  // set for Type II
  std::optional<double> nu;  // set for Type II
};

namespace detail {

inline void require_canonical(const QubitState& s, const char* who) {
  if (!in_canonical_region(s)) {
    throw CanonicalizationError(
        std::string(who) +
        ": state outside a in [0,1/2], phi in [0,pi/2]; use the oracle or "
        "canonicalize first");
  }
}

// Case distance formulas, exposed for boundary-continuity checks.
inline double type1_dist_ii(double x, double y, double z, double theta) {
  return std::hypot(x * std::sin(theta) - (1.0 - z) * std::cos(theta), y);
}
inline double type1_dist_iii(double x, double y, double z, double theta) {
  return std::hypot(x * std::cos(theta) - (1.0 + z) * std::sin(theta), y);
}
inline double type2_dist_i(double x, double z, double u2) {
  return std::sqrt(std::max(0.0, x * x + z * z - u2 * u2));
}
inline double type2_dist_ii(double x, double y, double z, double u2) {
  const double s = u2 + 1.0 - y;
  return std::sqrt(std::max(0.0, x * x + (y - 1.0) * (y - 1.0) + z * z - 0.5 * s * s));
}
inline double type2_dist_iii(double x, double y, double z, double u2) {
  const double s = u2 - 1.0 + y;
  return std::sqrt(std::max(0.0, x * x + (y - 1.0) * (y - 1.0) + z * z - 0.5 * s * s));
}

}  // namespace detail

// Margin of the Type I case-i condition (1-Z)/X >= tan(theta) >= X/(1+Z),
// written multiplicatively so X = 0 takes its limit form (bounds +inf and 0,
// case i holds for every theta). Nonnegative iff case i applies.
inline double type1_case_i_margin(const QubitState& s, double theta) {
  const double x = s.bloch.x, z = s.bloch.z;
  const double tt = std::tan(theta);
  return std::min((1.0 - z) - x * tt, (1.0 + z) * tt - x);
}

// Margin of the Type II case-i condition 1 - nu >= mu >= nu.
inline double type2_case_i_margin(const QubitState& s, double vartheta) {
  const double root = s.k * std::sqrt(s.a * (1.0 - s.a));
  const double mu = s.a + std::cos(vartheta) * std::cos(vartheta) * (1.0 - 2.0 * s.a) +
                    root * std::cos(s.phi) * std::sin(2.0 * vartheta);
  const double nu = root * std::sin(s.phi);
  return std::min(1.0 - nu - mu, mu - nu);
}

// Optimal approximation of a canonical state by SPrime(theta).
// Supported angles are theta in (0, pi/2]; for larger theta the printed case
// conditions degenerate and the oracle should be used instead.
inline ApproxResult solve_type1(const QubitState& s, double theta) {
  if (!(theta > 0.0 && theta <= 0.5 * pi + 1e-15)) {
    throw UnsupportedAngleError("solve_type1: theta must lie in (0, pi/2]");
  }
  detail::require_canonical(s, "solve_type1");
  const double x = s.bloch.x, y = s.bloch.y, z = s.bloch.z;
  const double tt = std::tan(theta);
  const double eps = tol.case_boundary;

  ApproxResult res;
  if ((1.0 - z) - x * tt >= -eps && (1.0 + z) * tt - x >= -eps) {
    // Projection lands inside the quadrilateral; distance is the y offset
    // and does not depend on theta.
    res.case_label = CaseLabel::I_i;
    res.distance = y;
    const double p0 = 0.5 + 0.5 * z - 0.5 * x / tt;
    const double p1 = 0.5 - 0.5 * z - 0.5 * x * tt;
    const double p2 = 0.5 * x * (tt + 1.0 / tt);
    res.weights.representative = {p0, p1, p2, 0.0};
    res.weights.gradients = {{-1.0, -1.0, 1.0, 1.0}};
    res.weights.params = {{"t", 0.0, std::max(0.0, std::min(p0, p1))}};
  } else if (x * tt > 1.0 - z) {
    res.case_label = CaseLabel::I_ii;
    res.distance = detail::type1_dist_ii(x, y, z, theta);
    const double p0 = 0.5 + 0.5 * z - 0.5 * x / tt;
    res.weights.representative = {p0, 0.0, 1.0 - p0, 0.0};
  } else {
    // Support is {|1>, |2>}. (The weight on |2> is the larger expression;
    // crossing the labels puts the mixture on the wrong side of the hull.)
    res.case_label = CaseLabel::I_iii;
    res.distance = detail::type1_dist_iii(x, y, z, theta);
    const double p2 = 0.5 + 0.5 * z + 0.5 * x * tt;
    res.weights.representative = {0.0, 1.0 - p2, p2, 0.0};
  }
  return res;
}

// Optimal approximation of a canonical state by SDoublePrime(vartheta),
// vartheta in (0, pi).
inline ApproxResult solve_type2(const QubitState& s, double vartheta) {
  if (!(vartheta > 0.0 && vartheta < pi)) {
    throw UnsupportedAngleError("solve_type2: vartheta must lie in (0, pi)");
  }
  detail::require_canonical(s, "solve_type2");
  const double x = s.bloch.x, y = s.bloch.y, z = s.bloch.z;
  const double root = s.k * std::sqrt(s.a * (1.0 - s.a));
  const double mu = s.a + std::cos(vartheta) * std::cos(vartheta) * (1.0 - 2.0 * s.a) +
                    root * std::cos(s.phi) * std::sin(2.0 * vartheta);
  const double nu = root * std::sin(s.phi);
  const double u2 = std::cos(2.0 * vartheta) * z + std::sin(2.0 * vartheta) * x;
  const double eps = tol.case_boundary;

  ApproxResult res;
  res.mu = mu;
  res.nu = nu;
  if (1.0 - nu - mu >= -eps && mu - nu >= -eps) {
    res.case_label = CaseLabel::II_i;
    res.distance = detail::type2_dist_i(x, z, u2);
    const double p3 = mu - nu;
    const double p4 = 1.0 - mu - nu;
    res.weights.representative = {p3, p4, 2.0 * nu, 0.0};
    res.weights.gradients = {{-1.0, -1.0, 1.0, 1.0}};
    res.weights.params = {{"t", 0.0, std::max(0.0, std::min(p3, p4))}};
  } else if (mu > 1.0 - nu) {
    res.case_label = CaseLabel::II_ii;
    res.distance = detail::type2_dist_ii(x, y, z, u2);
    res.weights.representative = {mu - nu, 0.0, 1.0 - mu + nu, 0.0};
  } else {
    res.case_label = CaseLabel::II_iii;
    res.distance = detail::type2_dist_iii(x, y, z, u2);
    res.weights.representative = {0.0, 1.0 - mu - nu, mu + nu, 0.0};
  }
  return res;
}

inline CaseLabel classify_region(const QubitState& s, double angle,
                                 SolverFamily family) {
  return family == SolverFamily::TypeI ? solve_type1(s, angle).case_label
                                       : solve_type2(s, angle).case_label;
}

// Admissible tan(theta) interval; hi may be +infinity.
struct TanInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

struct DecompResult {
  bool decomposable = false;
  double criterion_lhs = 0.0;  // (1 - <sigma_y>)^2
  double criterion_rhs = 0.0;  // <sigma_x>^2 + <sigma_z>^2
  TanInterval tan_theta;
  std::optional<double> theta;     // as supplied by the caller
  bool theta_admissible = false;   // meaningful when theta is set
  std::optional<WeightFamily> weights;
};

// Decomposability of a canonical state over the six-state set: exact
// decomposition exists iff (1-Y)^2 >= X^2 + Z^2, in which case tan(theta)
// ranges over [X/(1+Z-Y), (1-Z-Y)/X] and the weights form a two-parameter
// family in c1, c2 >= 0.
inline DecompResult decompose_three_gates(const QubitState& s,
                                          std::optional<double> theta = {}) {
  detail::require_canonical(s, "decompose_three_gates");
  if (theta && !(*theta > 0.0 && *theta <= 0.5 * pi + 1e-15)) {
    throw UnsupportedAngleError("decompose_three_gates: theta must lie in (0, pi/2]");
  }
  const double x = s.bloch.x, y = s.bloch.y, z = s.bloch.z;

  DecompResult res;
  res.criterion_lhs = (1.0 - y) * (1.0 - y);
  res.criterion_rhs = x * x + z * z;
  res.decomposable = res.criterion_lhs >= res.criterion_rhs - tol.case_boundary;
  res.theta = theta;

  if (x <= 1e-14) {
    // Limit form: lower bound 0, upper bound unconstrained.
    if (1.0 - z - y >= -tol.case_boundary) {
      res.tan_theta = {0.0, std::numeric_limits<double>::infinity(), false};
    }
  } else {
    const double lo = x / (1.0 + z - y);
    const double hi = (1.0 - z - y) / x;
    if (lo <= hi + tol.case_boundary) res.tan_theta = {lo, hi, false};
  }

  if (theta && res.decomposable && !res.tan_theta.empty) {
    const double tt = std::tan(*theta);
    if (tt >= res.tan_theta.lo - 1e-9 && tt <= res.tan_theta.hi + 1e-9) {
      res.theta_admissible = true;
      WeightFamily f;
      const double p0 = 0.5 + 0.5 * z - 0.5 * x / tt - 0.5 * y;
      const double p1 = 0.5 - 0.5 * z - 0.5 * x * tt - 0.5 * y;
      const double p2 = 0.5 * x * (tt + 1.0 / tt);
      f.representative = {p0, p1, p2, 0.0, y, 0.0};
      f.gradients = {{-1.0, -1.0, 0.0, 0.0, 1.0, 1.0},
                     {-1.0, -1.0, 1.0, 1.0, 0.0, 0.0}};
      const double cap = std::max(0.0, std::min(p0, p1));
      f.params = {{"c1", 0.0, cap}, {"c2", 0.0, cap}};
      res.weights = std::move(f);
    }
  }
  return res;
}

}  // namespace blochapprox

#pragma once

// Ground-truth solver: minimum Euclidean distance from a Bloch vector to the
// convex hull of up to 16 basis Bloch vectors (trace norm of a state
// difference equals that Euclidean distance, so distances come out in trace-
// norm units). Every nonempty support subset is enumerated; on each subset the
// equality-constrained least-squares problem is solved exactly, infeasible or
// non-stationary candidates are discarded and the best survivor wins. No
// iteration, no convergence knobs.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "blochapprox/errors.hpp"
#include "blochapprox/gates.hpp"
#include "blochapprox/matrix.hpp"
#include "blochapprox/state.hpp"
#include "blochapprox/tolerances.hpp"

namespace blochapprox {

struct SimplexQP {
  Vec3 target;
  std::vector<Vec3> points;
};

struct OracleSolution {
  double distance = 0.0;
  std::vector<double> weights;
  std::vector<int> active_support;
  double kkt_residual = 0.0;
};

namespace detail {

// Jacobi eigendecomposition of a symmetric 3x3 matrix.
inline void eigen_sym3(const double a_in[3][3], double eval[3], double evec[3][3]) {
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a[i][j] = a_in[i][j];
      evec[i][j] = (i == j) ? 1.0 : 0.0;
    }
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < 3; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
        for (int r = 0; r < 3; ++r) {
          const double vrp = evec[r][p], vrq = evec[r][q];
          evec[r][p] = c * vrp - s * vrq;
          evec[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) eval[i] = a[i][i];
}

// Min-norm solution of min_c |y - sum_j c_j d_j| via the pseudo-inverse of
// D D^T with a singular-value cutoff (handles collinear/duplicate points).
inline void affine_ls_pinv(const Vec3& y, std::span<const Vec3> d, double* c) {
  double b[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (const Vec3& v : d) {
    b[0][0] += v.x * v.x;
    b[0][1] += v.x * v.y;
    b[0][2] += v.x * v.z;
    b[1][1] += v.y * v.y;
    b[1][2] += v.y * v.z;
    b[2][2] += v.z * v.z;
  }
  b[1][0] = b[0][1];
  b[2][0] = b[0][2];
  b[2][1] = b[1][2];
  double eval[3], evec[3][3];
  eigen_sym3(b, eval, evec);
  double svmax = 0.0;
  for (double l : eval) svmax = std::max(svmax, std::sqrt(std::max(0.0, l)));
  const double cutoff = 1e-12 * std::max(1.0, svmax);
  Vec3 z{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    if (std::sqrt(std::max(0.0, eval[i])) <= cutoff) continue;
    const Vec3 v{evec[0][i], evec[1][i], evec[2][i]};
    z += (dot(v, y) / eval[i]) * v;
  }
  for (std::size_t j = 0; j < d.size(); ++j) c[j] = dot(d[j], z);
}

// Normal-equation fast paths for up to three unknowns; ill-conditioned
// systems fall back to the pseudo-inverse route.
inline void affine_ls(const Vec3& y, std::span<const Vec3> d, double* c) {
  const std::size_t m = d.size();
  if (m == 0) return;
  if (m == 1) {
    const double g = dot(d[0], d[0]);
    if (g > 1e-24) {
      c[0] = dot(d[0], y) / g;
    } else {
      c[0] = 0.0;
    }
    return;
  }
  if (m == 2) {
    const double g00 = dot(d[0], d[0]), g01 = dot(d[0], d[1]), g11 = dot(d[1], d[1]);
    const double det = g00 * g11 - g01 * g01;
    const double scale = std::max(g00, g11);
    if (scale > 0.0 && std::abs(det) > 1e-13 * scale * scale) {
      const double b0 = dot(d[0], y), b1 = dot(d[1], y);
      c[0] = (b0 * g11 - b1 * g01) / det;
      c[1] = (b1 * g00 - b0 * g01) / det;
      return;
    }
  } else if (m == 3) {
    const double g00 = dot(d[0], d[0]), g01 = dot(d[0], d[1]), g02 = dot(d[0], d[2]);
    const double g11 = dot(d[1], d[1]), g12 = dot(d[1], d[2]), g22 = dot(d[2], d[2]);
    const double det = g00 * (g11 * g22 - g12 * g12) - g01 * (g01 * g22 - g12 * g02) +
                       g02 * (g01 * g12 - g11 * g02);
    const double scale = std::max({g00, g11, g22});
    if (scale > 0.0 && std::abs(det) > 1e-13 * scale * scale * scale) {
      const double b0 = dot(d[0], y), b1 = dot(d[1], y), b2 = dot(d[2], y);
      c[0] = (b0 * (g11 * g22 - g12 * g12) - g01 * (b1 * g22 - g12 * b2) +
              g02 * (b1 * g12 - g11 * b2)) /
             det;
      c[1] = (g00 * (b1 * g22 - g12 * b2) - b0 * (g01 * g22 - g12 * g02) +
              g02 * (g01 * b2 - b1 * g02)) /
             det;
      c[2] = (g00 * (g11 * b2 - b1 * g12) - g01 * (g01 * b2 - b1 * g02) +
              b0 * (g01 * g12 - g11 * g02)) /
             det;
      return;
    }
  }
  affine_ls_pinv(y, d, c);
}

}  // namespace detail

// Smallest residual of the stationarity-plus-complementary-slackness system
// at `weights`, minimized over the admissible multipliers. Zero (up to
// tol.kkt_residual) certifies a global optimum of the convex objective.
inline double kkt_residual_at(const Vec3& target, std::span<const Vec3> points,
                              std::span<const double> weights) {
  Vec3 q{0, 0, 0};
  for (std::size_t i = 0; i < points.size(); ++i) q += weights[i] * points[i];
  const Vec3 r = target - q;
  const std::size_t n = points.size();
  std::vector<double> grad(n);
  double gmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    grad[i] = -0.5 * dot(points[i], r);
    gmax = std::max(gmax, std::abs(grad[i]));
  }
  const auto sq_residual = [&](double mu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = grad[i] + mu;
      if (weights[i] > tol.simplex_feasibility) {
        acc += s * s;  // multiplier forced to zero on the support
      } else if (s < 0.0) {
        acc += s * s;  // would need a negative multiplier
      }
    }
    return acc;
  };
  // Golden-section minimization; the objective is unimodal in mu.
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = -gmax - 1.0, hi = gmax + 1.0;
  double m1 = hi - invphi * (hi - lo), m2 = lo + invphi * (hi - lo);
  double f1 = sq_residual(m1), f2 = sq_residual(m2);
  for (int it = 0; it < 160; ++it) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - invphi * (hi - lo);
      f1 = sq_residual(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + invphi * (hi - lo);
      f2 = sq_residual(m2);
    }
  }
  return std::sqrt(std::min(f1, f2));
}

inline OracleSolution project_onto_hull(const SimplexQP& problem) {
  const std::size_t n = problem.points.size();
  if (n == 0) throw BasisSizeError("project_onto_hull: empty basis");
  if (n > 16) throw BasisSizeError("project_onto_hull: more than 16 basis states");
  const Vec3 t = problem.target;
  const auto& pts = problem.points;

  std::vector<double> grad(n);
  double best_dist = std::numeric_limits<double>::infinity();
  std::array<double, 16> best_w{};
  std::uint32_t best_mask = 0;
  double fallback_dist = std::numeric_limits<double>::infinity();
  std::array<double, 16> fallback_w{};
  std::uint32_t fallback_mask = 0;

  std::array<int, 16> idx{};
  std::array<Vec3, 15> diffs{};
  std::array<double, 15> coef{};

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx[m++] = static_cast<int>(i);
    }
    const Vec3 anchor = pts[idx[0]];
    const Vec3 y = t - anchor;
    for (int j = 1; j < m; ++j) diffs[j - 1] = pts[idx[j]] - anchor;
    detail::affine_ls(y, std::span<const Vec3>(diffs.data(), m - 1), coef.data());

    double wsum = 0.0;
    bool feasible = true;
    for (int j = 1; j < m; ++j) {
      wsum += coef[j - 1];
      if (coef[j - 1] < -tol.simplex_feasibility) feasible = false;
    }
    const double w0 = 1.0 - wsum;
    if (w0 < -tol.simplex_feasibility) feasible = false;
    if (!feasible) continue;

    Vec3 q = anchor;
    for (int j = 1; j < m; ++j) q += coef[j - 1] * diffs[j - 1];
    const Vec3 r = t - q;
    const double dist = norm(r);

    if (dist < fallback_dist) {
      fallback_dist = dist;
      fallback_mask = mask;
      fallback_w.fill(0.0);
      fallback_w[idx[0]] = w0;
      for (int j = 1; j < m; ++j) fallback_w[idx[j]] = coef[j - 1];
    }

    // Stationarity for the excluded states: their gradient may not point
    // below the common support value.
    double gbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) grad[i] = -0.5 * dot(pts[i], r);
    for (int j = 0; j < m; ++j) gbar += grad[idx[j]];
    gbar /= m;
    bool stationary = true;
    for (std::size_t i = 0; i < n && stationary; ++i) {
      if (!(mask & (1u << i)) && grad[i] < gbar - 1e-9) stationary = false;
    }
    if (!stationary) continue;

    if (dist < best_dist) {
      best_dist = dist;
      best_mask = mask;
      best_w.fill(0.0);
      best_w[idx[0]] = w0;
      for (int j = 1; j < m; ++j) best_w[idx[j]] = coef[j - 1];
    }
    if (best_dist < 1e-15) break;  // nothing can beat an exact hit
  }

  if (best_mask == 0) {
    // Cannot happen for exact arithmetic; keep the feasible minimum anyway.
    best_dist = fallback_dist;
    best_mask = fallback_mask;
    best_w = fallback_w;
  }

  OracleSolution sol;
  sol.weights.assign(n, 0.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) wsum += (best_w[i] = std::max(best_w[i], 0.0));
  for (std::size_t i = 0; i < n; ++i) sol.weights[i] = best_w[i] / wsum;
  Vec3 q{0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) q += sol.weights[i] * pts[i];
  sol.distance = norm(t - q);
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.weights[i] > tol.simplex_feasibility) {
      sol.active_support.push_back(static_cast<int>(i));
    }
  }
  sol.kkt_residual = kkt_residual_at(t, pts, sol.weights);
  return sol;
}

inline OracleSolution project_state(const QubitState& s, const BasisSet& set) {
  return project_onto_hull(SimplexQP{s.bloch, bloch_points(set)});
}

inline double oracle_distance(const QubitState& s, const BasisSet& set) {
  return project_state(s, set).distance;
}

// KKT residual of an arbitrary weight vector for the squared-distance
// objective over the simplex.
inline double verify_kkt(const QubitState& s, const BasisSet& set,
                         std::span<const double> weights) {
  if (weights.size() != set.states.size()) {
    throw ContractViolationError("verify_kkt: weight count does not match basis size");
  }
  const std::vector<Vec3> pts = bloch_points(set);
  return kkt_residual_at(s.bloch, pts, weights);
}

// Trace-norm distance computed the long way round, through the 2x2 density
// matrices rather than Bloch coordinates; cross-checks the shortcut.
inline double distance_direct(const QubitState& s, const BasisSet& set,
                              std::span<const double> weights) {
  if (weights.size() != set.states.size()) {
    throw ContractViolationError(
        "distance_direct: weight count does not match basis size");
  }
  ComplexMatrix2 m = s.rho;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    m = m - set.states[i].density() * weights[i];
  }
  return trace_norm(m);
}

}  // namespace blochapprox

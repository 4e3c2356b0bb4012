#pragma once

// Central numeric tolerances. The library, the CLI `verify` command and the
// acceptance suite all read from this one record so they cannot drift apart.

namespace blochapprox {

struct Tolerances {
  // Entry-wise bound for Hermiticity / tracelessness contract checks.
  double hermiticity = 1e-10;
  double traceless = 1e-10;

  // Weights may undershoot zero by this much and still count as feasible.
  double simplex_feasibility = 1e-12;

  // A weight vector is a KKT point when its residual is below this.
  double kkt_residual = 1e-8;

  // Allowed gap between a closed-form distance and the hull-projection oracle.
  double oracle_vs_analytic = 1e-9;

  // Smallest admissible eigenvalue of a constructed density matrix.
  double psd_eigenvalue = 1e-12;

  // Slack applied to case-condition boundaries; ties go to the case-i branch.
  double case_boundary = 1e-12;

  // Achieved distance may vary across an optimal weight family by this much.
  double family_spread = 1e-10;

  // Oracle hull distance below this counts as "state is decomposable".
  double decomposable = 1e-8;
};

inline constexpr Tolerances tol{};

}  // namespace blochapprox

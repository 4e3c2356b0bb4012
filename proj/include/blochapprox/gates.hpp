#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "blochapprox/errors.hpp"
#include "blochapprox/matrix.hpp"
#include "blochapprox/state.hpp"

namespace blochapprox {

// Real 2x2 quantum logic gates. A reflection
//   U_alpha = [ cos a   sin a ; sin a  -cos a ]
// is Hermitian and unitary with eigenvalues +1/-1; a rotation
//   V_gamma = [ cos g  -sin g ; sin g   cos g ]
// is orthogonal with the y-eigenstates as eigenvectors (gamma != 0, pi).
enum class GateKind { Reflection, Rotation };

struct RealGate {
  GateKind kind;
  double angle;
  ComplexMatrix2 matrix;
};

inline RealGate reflection_gate(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  return {GateKind::Reflection, alpha, {c, s, s, -c}};
}

inline RealGate rotation_gate(double gamma) {
  const double c = std::cos(gamma), s = std::sin(gamma);
  return {GateKind::Rotation, gamma, {c, -s, s, c}};
}

inline RealGate z_gate() { return reflection_gate(0.0); }
inline RealGate hadamard_gate() { return reflection_gate(0.25 * pi); }
inline RealGate x_gate() { return reflection_gate(0.5 * pi); }

// Eigenvectors of a reflection U_alpha, eigenvalues +1 and -1 respectively.
inline PureState reflection_eigvec_plus(double alpha) {
  return make_pure(std::cos(0.5 * alpha), std::sin(0.5 * alpha));
}
inline PureState reflection_eigvec_minus(double alpha) {
  return make_pure(std::sin(0.5 * alpha), -std::cos(0.5 * alpha));
}

inline PureState y_plus() {
  return make_pure(1.0 / std::sqrt(2.0), complexd{0.0, 1.0 / std::sqrt(2.0)});
}
inline PureState y_minus() {
  return make_pure(1.0 / std::sqrt(2.0), complexd{0.0, -1.0 / std::sqrt(2.0)});
}

inline std::pair<PureState, PureState> eigenbasis(const RealGate& g) {
  if (g.kind == GateKind::Reflection) {
    return {reflection_eigvec_plus(g.angle), reflection_eigvec_minus(g.angle)};
  }
  const double w = wrap_angle(g.angle);
  if (std::min(w, two_pi - w) < 1e-12 || std::abs(w - pi) < 1e-12) {
    throw DegenerateGateError(
        "eigenbasis: rotation by a multiple of pi has no distinguished eigenbasis");
  }
  return {y_plus(), y_minus()};
}

// Rotation of all amplitude vectors by alpha/2 counterclockwise; maps the
// eigenbasis of U_alpha onto the computational basis (up to sign).
inline ComplexMatrix2 isometry(double alpha) {
  const double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha);
  return {c, s, -s, c};
}

inline PureState transform(const ComplexMatrix2& u, const PureState& psi) {
  return make_pure(u.m00 * psi.z1 + u.m01 * psi.z2,
                   u.m10 * psi.z1 + u.m11 * psi.z2);
}

// U rho U^dag with U = isometry(alpha), re-expressed in (a, k, phi) form.
// On the Bloch sphere this is a rotation about the y axis: <sigma_y> is
// preserved while <sigma_x> and <sigma_z> mix.
inline QubitState rotate_state(const QubitState& s, double alpha) {
  const ComplexMatrix2 u = isometry(alpha);
  const ComplexMatrix2 r = u * s.rho * u.adjoint();
  double a = std::clamp(std::real(r.m11), 0.0, 1.0);
  const double denom = std::sqrt(a * (1.0 - a));
  double k = 0.0, phi = 0.0;
  if (denom > 1e-15) {
    k = std::min(std::abs(r.m10) / denom, 1.0);
    phi = std::atan2(std::imag(r.m10), std::real(r.m10));
  }
  return make_state(a, k, phi);
}

// The available basis sets. S1/S2/S3/ThreeGate are gate-defined; SPrime,
// SDoublePrime and STriplePrime are their canonical images under the isometry.
enum class BasisKind { S1, S2, S3, ThreeGate, SPrime, SDoublePrime, STriplePrime };

inline const char* to_string(BasisKind k) {
  switch (k) {
    case BasisKind::S1: return "s1";
    case BasisKind::S2: return "s2";
    case BasisKind::S3: return "s3";
    case BasisKind::ThreeGate: return "threegate";
    case BasisKind::SPrime: return "sprime";
    case BasisKind::SDoublePrime: return "sdoubleprime";
    case BasisKind::STriplePrime: return "stripleprime";
  }
  return "?";
}

struct BasisSet {
  BasisKind kind;
  std::vector<PureState> states;
  // Defining angles; only those meaningful for `kind` are set.
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double vartheta = 0.0;
};

inline std::vector<Vec3> bloch_points(const BasisSet& s) {
  std::vector<Vec3> pts;
  pts.reserve(s.states.size());
  for (const PureState& p : s.states) pts.push_back(p.bloch);
  return pts;
}

namespace detail {
inline double reduced_theta(double alpha, double beta, const char* who) {
  if (!(beta > alpha)) {
    throw GateOrderingError(std::string(who) + ": requires beta > alpha");
  }
  // Eigenbases repeat with period pi in theta (up to a global sign).
  double theta = std::fmod(0.5 * (beta - alpha), pi);
  if (theta < 1e-12 || theta > pi - 1e-12) {
    throw DegenerateGateError(std::string(who) +
                              ": the two gates share an eigenbasis");
  }
  return theta;
}
}  // namespace detail

// {|0>, |1>, cos t|0>+sin t|1>, sin t|0>-cos t|1>}, theta in (0, pi).
inline BasisSet basis_sprime(double theta) {
  if (!(theta > 0.0 && theta < pi)) {
    throw UnsupportedAngleError("basis_sprime: theta must lie in (0, pi)");
  }
  BasisSet b{BasisKind::SPrime,
             {ket0(), ket1(), reflection_eigvec_plus(2.0 * theta),
              reflection_eigvec_minus(2.0 * theta)}};
  b.theta = theta;
  return b;
}

// {cos t|0>+sin t|1>, sin t|0>-cos t|1>, y+, y-}, vartheta in (0, pi).
inline BasisSet basis_sdoubleprime(double vartheta) {
  if (!(vartheta > 0.0 && vartheta < pi)) {
    throw UnsupportedAngleError("basis_sdoubleprime: vartheta must lie in (0, pi)");
  }
  BasisSet b{BasisKind::SDoublePrime,
             {reflection_eigvec_plus(2.0 * vartheta),
              reflection_eigvec_minus(2.0 * vartheta), y_plus(), y_minus()}};
  b.vartheta = vartheta;
  return b;
}

// SPrime(theta) together with the y eigenpair; six states.
inline BasisSet basis_stripleprime(double theta) {
  BasisSet b = basis_sprime(theta);
  b.kind = BasisKind::STriplePrime;
  b.states.push_back(y_plus());
  b.states.push_back(y_minus());
  return b;
}

// Eigenvectors of U_alpha and U_beta, beta > alpha.
inline BasisSet basis_s1(double alpha, double beta) {
  detail::reduced_theta(alpha, beta, "basis_s1");  // validates the pair
  BasisSet b{BasisKind::S1,
             {reflection_eigvec_plus(alpha), reflection_eigvec_minus(alpha),
              reflection_eigvec_plus(beta), reflection_eigvec_minus(beta)}};
  b.alpha = alpha;
  b.beta = beta;
  return b;
}

// Eigenvectors of U_beta plus the y eigenpair.
inline BasisSet basis_s2(double beta) {
  BasisSet b{BasisKind::S2,
             {reflection_eigvec_plus(beta), reflection_eigvec_minus(beta),
              y_plus(), y_minus()}};
  b.beta = beta;
  return b;
}

// Eigenvectors of U_alpha plus the y eigenpair.
inline BasisSet basis_s3(double alpha) {
  BasisSet b{BasisKind::S3,
             {reflection_eigvec_plus(alpha), reflection_eigvec_minus(alpha),
              y_plus(), y_minus()}};
  b.alpha = alpha;
  return b;
}

// Eigenvectors of U_alpha, U_beta and the y eigenpair; six states.
inline BasisSet basis_three_gate(double alpha, double beta) {
  detail::reduced_theta(alpha, beta, "basis_three_gate");
  BasisSet b{BasisKind::ThreeGate,
             {reflection_eigvec_plus(alpha), reflection_eigvec_minus(alpha),
              reflection_eigvec_plus(beta), reflection_eigvec_minus(beta),
              y_plus(), y_minus()}};
  b.alpha = alpha;
  b.beta = beta;
  return b;
}

// Conjugates the state by the isometry that carries the gate-defined set onto
// its canonical form. Distances to the hull are preserved, so the canonical
// problem is equivalent to the original one. S2/S3 are already canonical
// (their first gate plays the role of U_beta directly).
inline std::pair<QubitState, BasisSet> reduce_problem(const QubitState& s,
                                                      const BasisSet& set) {
  switch (set.kind) {
    case BasisKind::S1: {
      const double theta = detail::reduced_theta(set.alpha, set.beta, "reduce_problem");
      return {rotate_state(s, set.alpha), basis_sprime(theta)};
    }
    case BasisKind::ThreeGate: {
      const double theta = detail::reduced_theta(set.alpha, set.beta, "reduce_problem");
      return {rotate_state(s, set.alpha), basis_stripleprime(theta)};
    }
    case BasisKind::S2: {
      const double vt = 0.5 * wrap_angle(set.beta);
      if (vt < 1e-12 || vt > pi - 1e-12) {
        throw DegenerateGateError("reduce_problem: S2 gate angle is degenerate");
      }
      return {s, basis_sdoubleprime(vt)};
    }
    case BasisKind::S3: {
      const double vt = 0.5 * wrap_angle(set.alpha);
      if (vt < 1e-12 || vt > pi - 1e-12) {
        throw DegenerateGateError("reduce_problem: S3 gate angle is degenerate");
      }
      return {s, basis_sdoubleprime(vt)};
    }
    default:
      return {s, set};  // already canonical
  }
}

}  // namespace blochapprox

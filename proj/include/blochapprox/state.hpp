#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "blochapprox/errors.hpp"
#include "blochapprox/matrix.hpp"

namespace blochapprox {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wraps an angle into [0, 2*pi). Negative inputs wrap, they are not rejected.
inline double wrap_angle(double phi) {
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

// Unit vector in C^2 with its Bloch-sphere image.
struct PureState {
  complexd z1;  // amplitude on |0>
  complexd z2;  // amplitude on |1>
  Vec3 bloch;

  ComplexMatrix2 density() const {
    return {z1 * std::conj(z1), z1 * std::conj(z2), z2 * std::conj(z1),
            z2 * std::conj(z2)};
  }
};

inline PureState make_pure(complexd z1, complexd z2) {
  const double n2 = std::norm(z1) + std::norm(z2);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw ContractViolationError("make_pure: amplitudes are not unit norm");
  }
  const double n = std::sqrt(n2);
  z1 /= n;
  z2 /= n;
  const complexd c = std::conj(z1) * z2;
  return {z1, z2, Vec3{2.0 * std::real(c), 2.0 * std::imag(c),
                       std::norm(z1) - std::norm(z2)}};
}

inline PureState ket0() { return make_pure(1.0, 0.0); }
inline PureState ket1() { return make_pure(0.0, 1.0); }

// Qubit density matrix in the (a, k, phi) parameterization:
//
//   rho = [ 1-a                c*exp(-i phi) ]     c = k*sqrt(a(1-a))
//         [ c*exp(i phi)       a             ]
//
// with Bloch vector (2c cos phi, 2c sin phi, 1-2a).
struct QubitState {
  double a = 0.0;
  double k = 0.0;
  double phi = 0.0;
  ComplexMatrix2 rho;
  Vec3 bloch;
};

inline QubitState make_state(double a, double k, double phi) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::domain_error("make_state: parameter a must lie in [0, 1], got " +
                            std::to_string(a));
  }
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::domain_error("make_state: parameter k must lie in [0, 1], got " +
                            std::to_string(k));
  }
  phi = wrap_angle(phi);
  const double c = k * std::sqrt(a * (1.0 - a));
  const complexd off = c * std::exp(complexd{0.0, phi});
  QubitState s;
  s.a = a;
  s.k = k;
  s.phi = phi;
  s.rho = {complexd{1.0 - a, 0.0}, std::conj(off), off, complexd{a, 0.0}};
  s.bloch = {2.0 * c * std::cos(phi), 2.0 * c * std::sin(phi), 1.0 - 2.0 * a};
  return s;
}

// Tr(rho G) for Hermitian G; the result is real up to rounding.
inline double expectation(const QubitState& s, const ComplexMatrix2& g) {
  if (!is_hermitian(g)) {
    throw ContractViolationError("expectation: observable is not Hermitian");
  }
  const ComplexMatrix2& r = s.rho;
  const complexd t = r.m00 * g.m00 + r.m01 * g.m10 + r.m10 * g.m01 + r.m11 * g.m11;
  return std::real(t);
}

// The closed-form case analysis is derived for a in [0, 1/2], phi in [0, pi/2].
inline bool in_canonical_region(const QubitState& s, double slack = 1e-12) {
  return s.a <= 0.5 + slack && s.phi <= 0.5 * pi + slack;
}

}  // namespace blochapprox

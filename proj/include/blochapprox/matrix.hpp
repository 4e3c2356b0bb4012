#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "blochapprox/errors.hpp"
#include "blochapprox/tolerances.hpp"

namespace blochapprox {

using complexd = std::complex<double>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// 2x2 complex matrix, row-major. Hermiticity/unitarity are checked by
// predicates, never enforced by construction.
struct ComplexMatrix2 {
  complexd m00{0.0, 0.0};
  complexd m01{0.0, 0.0};
  complexd m10{0.0, 0.0};
  complexd m11{0.0, 0.0};

  static ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static ComplexMatrix2 zero() { return {}; }

  ComplexMatrix2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  complexd trace() const { return m00 + m11; }
  complexd det() const { return m00 * m11 - m01 * m10; }

  ComplexMatrix2 operator+(const ComplexMatrix2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  ComplexMatrix2 operator-(const ComplexMatrix2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  ComplexMatrix2 operator*(const ComplexMatrix2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  ComplexMatrix2 operator*(double s) const {
    return {m00 * s, m01 * s, m10 * s, m11 * s};
  }
};

inline ComplexMatrix2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline ComplexMatrix2 pauli_y() {
  return {complexd{0, 0}, complexd{0, -1}, complexd{0, 1}, complexd{0, 0}};
}
inline ComplexMatrix2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

inline bool is_hermitian(const ComplexMatrix2& a, double eps = tol.hermiticity) {
  return std::abs(std::imag(a.m00)) <= eps && std::abs(std::imag(a.m11)) <= eps &&
         std::abs(a.m01 - std::conj(a.m10)) <= eps;
}

inline bool is_unitary(const ComplexMatrix2& a, double eps = 1e-12) {
  const ComplexMatrix2 p = a * a.adjoint();
  return std::abs(p.m00 - 1.0) <= eps && std::abs(p.m11 - 1.0) <= eps &&
         std::abs(p.m01) <= eps && std::abs(p.m10) <= eps;
}

// Eigenvalues of a Hermitian 2x2 matrix by the quadratic formula,
// returned as (low, high). No iteration, fully deterministic.
inline std::pair<double, double> hermitian_eigenvalues(const ComplexMatrix2& a) {
  const double mean = 0.5 * std::real(a.trace());
  const double d = std::real(a.det());
  const double gap = std::sqrt(std::max(0.0, mean * mean - d));
  return {mean - gap, mean + gap};
}

// Trace norm (sum of singular values). For 2x2 matrices
// (s1 + s2)^2 = sum |a_ij|^2 + 2 |det A|, so no eigensolver is needed.
inline double trace_norm(const ComplexMatrix2& a) {
  const double sq = std::norm(a.m00) + std::norm(a.m01) + std::norm(a.m10) +
                    std::norm(a.m11);
  return std::sqrt(std::max(0.0, sq + 2.0 * std::abs(a.det())));
}

// Trace norm of a traceless Hermitian matrix via 2*sqrt(|Det|).
// Inputs violating the contract are rejected, not silently accepted.
inline double traceless_norm_via_det(const ComplexMatrix2& a) {
  if (!is_hermitian(a)) {
    throw ContractViolationError("traceless_norm_via_det: matrix is not Hermitian");
  }
  if (std::abs(a.trace()) > tol.traceless) {
    throw ContractViolationError("traceless_norm_via_det: matrix is not traceless");
  }
  return 2.0 * std::sqrt(std::abs(a.det()));
}

}  // namespace blochapprox

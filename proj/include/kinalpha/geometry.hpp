#pragma once

#include <array>
#include <type_traits>

#include "kinalpha/poly.hpp"

namespace kinalpha {

template <class S>
using Vec3 = std::array<S, 3>;

using Point3 = Vec3<Rational>;
/// A point whose coordinates are polynomials in time.
using PolyPoint = Vec3<Poly>;

template <class S>
Vec3<S> operator-(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class S>
Vec3<S> operator+(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class S>
S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
S norm2(const Vec3<S>& a) {
  return dot(a, a);
}

template <class S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class S>
Vec3<S> scale(const S& k, const Vec3<S>& a) {
  return {k * a[0], k * a[1], k * a[2]};
}

template <class S>
S det3(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c) {
  return dot(a, cross(b, c));
}

/// Determinant of a 4x4 matrix given as rows.
template <class S>
S det4(const std::array<std::array<S, 4>, 4>& m) {
  S out{};
  for (int col = 0; col < 4; ++col) {
    if constexpr (std::is_same_v<S, Poly>) {
      if (m[0][col].is_zero()) continue;
    }
    Vec3<S> r1, r2, r3;
    for (int k = 0, j = 0; k < 4; ++k) {
      if (k == col) continue;
      r1[j] = m[1][k];
      r2[j] = m[2][k];
      r3[j] = m[3][k];
      ++j;
    }
    const S minor = m[0][col] * det3(r1, r2, r3);
    if (col % 2 == 0) out = out + minor;
    else out = out - minor;
  }
  return out;
}

/// Piecewise-linear trajectory segment: position(t_lo) = start,
/// position(t_hi) = end, linear in between.
struct LinearMotion {
  Point3 start;
  Point3 end;
  Rational t_lo = 0;
  Rational t_hi = 1;

  static LinearMotion stationary(const Point3& p, Rational lo = 0, Rational hi = 1) {
    return LinearMotion{p, p, std::move(lo), std::move(hi)};
  }

  /// Coordinates as degree <= 1 polynomials in absolute time t.
  PolyPoint coords() const {
    if (!(t_lo < t_hi)) throw KernelError("InvalidMotion", "motion needs t_lo < t_hi");
    PolyPoint out;
    const Rational span = t_hi - t_lo;
    for (int i = 0; i < 3; ++i) {
      const Rational slope = (end[i] - start[i]) / span;
      out[i] = Poly::linear(start[i] - slope * t_lo, slope);
    }
    return out;
  }

  Point3 at(const Rational& t) const {
    const Rational s = (t - t_lo) / (t_hi - t_lo);
    Point3 p;
    for (int i = 0; i < 3; ++i) p[i] = start[i] + s * (end[i] - start[i]);
    return p;
  }
};

inline Point3 point(const Rational& x, const Rational& y, const Rational& z) { return {x, y, z}; }

}  // namespace kinalpha

#include "kinalpha/certificates.hpp"

namespace kinalpha {

namespace {

template <class S>
S orient_t(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c, const Vec3<S>& d) {
  return det3(b - a, c - a, d - a);
}

// Subtracting the first row, then replacing |p_i|^2 - |a|^2 by |p_i - a|^2
// (a column operation), leaves a 4x4 determinant in translated coordinates.
template <class S>
S lifted_t(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c, const Vec3<S>& d, const Vec3<S>& e) {
  std::array<std::array<S, 4>, 4> m;
  const Vec3<S>* ps[4] = {&b, &c, &d, &e};
  for (int i = 0; i < 4; ++i) {
    const Vec3<S> q = *ps[i] - a;
    m[i] = {q[0], q[1], q[2], norm2(q)};
  }
  return det4(m);
}

// Triangle with a at the origin: s = u x w, circumcenter offset M / (2 |s|^2).
template <class S>
Vec3<S> triangle_center_num(const Vec3<S>& u, const Vec3<S>& w, const Vec3<S>& s) {
  const Vec3<S> v = scale<S>(norm2(u), w) - scale<S>(norm2(w), u);
  return cross(v, s);
}

// Tetrahedron with a at the origin: circumcenter offset N / (2 det(u, v, w)).
template <class S>
Vec3<S> tet_center_num(const Vec3<S>& u, const Vec3<S>& v, const Vec3<S>& w) {
  return scale<S>(norm2(u), cross(v, w)) + scale<S>(norm2(v), cross(w, u)) + scale<S>(norm2(w), cross(u, v));
}

}  // namespace

Poly orient_poly(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const PolyPoint& d) {
  return orient_t(a, b, c, d).primitive();
}

Poly lifted_poly(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const PolyPoint& d,
                 const PolyPoint& e) {
  return lifted_t(a, b, c, d, e).primitive();
}

Poly radius_poly_edge(const PolyPoint& a, const PolyPoint& b, const Rational& alpha_sq) {
  return (norm2(b - a) - Poly::constant(4 * alpha_sq)).primitive();
}

Poly radius_poly_triangle(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const Rational& alpha_sq) {
  const PolyPoint u = b - a;
  const PolyPoint w = c - a;
  const Poly prod = norm2(u) * norm2(w) * norm2(c - b);
  return (prod - Rational(4 * alpha_sq) * norm2(cross(u, w))).primitive();
}

Poly radius_poly_triangle_deg10(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c,
                                const Rational& alpha_sq) {
  const PolyPoint u = b - a;
  const PolyPoint w = c - a;
  const PolyPoint s = cross(u, w);
  const Poly den = det3(u, w, s);
  const PolyPoint num = triangle_center_num(u, w, s);
  return (norm2(num) - Rational(4 * alpha_sq) * (den * den)).primitive();
}

Poly radius_poly_tet(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const PolyPoint& d,
                     const Rational& alpha_sq) {
  const PolyPoint u = b - a;
  const PolyPoint v = c - a;
  const PolyPoint w = d - a;
  const Poly vol = det3(u, v, w);
  return (norm2(tet_center_num(u, v, w)) - Rational(4 * alpha_sq) * (vol * vol)).primitive();
}

Poly radius_poly(const std::vector<PolyPoint>& s, const Rational& alpha_sq, bool deg10_triangle) {
  switch (s.size()) {
    case 2:
      return radius_poly_edge(s[0], s[1], alpha_sq);
    case 3:
      return deg10_triangle ? radius_poly_triangle_deg10(s[0], s[1], s[2], alpha_sq)
                            : radius_poly_triangle(s[0], s[1], s[2], alpha_sq);
    case 4:
      return radius_poly_tet(s[0], s[1], s[2], s[3], alpha_sq);
    default:
      throw KernelError("InvalidSimplex", "radius certificate needs 2 to 4 vertices");
  }
}

Poly encroachment_poly(const std::vector<PolyPoint>& s, const PolyPoint& p) {
  if (s.size() == 2) return dot(p - s[0], p - s[1]).primitive();
  if (s.size() != 3) throw KernelError("InvalidSimplex", "encroachment needs an edge or a triangle");
  const PolyPoint u = s[1] - s[0];
  const PolyPoint w = s[2] - s[0];
  const PolyPoint n = cross(u, w);
  const PolyPoint q = p - s[0];
  return (norm2(q) * norm2(n) - dot(q, triangle_center_num(u, w, n))).primitive();
}

Poly flip_certificate_5(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                        const LinearMotion& m4, const LinearMotion& m5) {
  return lifted_poly(m1.coords(), m2.coords(), m3.coords(), m4.coords(), m5.coords());
}

Poly flip_certificate_4(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                        const LinearMotion& m4) {
  return orient_poly(m1.coords(), m2.coords(), m3.coords(), m4.coords());
}

Poly radius_certificate_edge(const LinearMotion& m1, const LinearMotion& m2, const Rational& alpha_sq) {
  return radius_poly_edge(m1.coords(), m2.coords(), alpha_sq);
}

Poly radius_certificate_triangle(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                                 const Rational& alpha_sq) {
  return radius_poly_triangle(m1.coords(), m2.coords(), m3.coords(), alpha_sq);
}

Poly radius_certificate_triangle_deg10(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                                       const Rational& alpha_sq) {
  return radius_poly_triangle_deg10(m1.coords(), m2.coords(), m3.coords(), alpha_sq);
}

Poly radius_certificate_tet(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                            const LinearMotion& m4, const Rational& alpha_sq) {
  return radius_poly_tet(m1.coords(), m2.coords(), m3.coords(), m4.coords(), alpha_sq);
}

int orient4(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return sign(orient_t(a, b, c, d));
}

int lifted_orient(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& e) {
  return sign(lifted_t(a, b, c, d, e));
}

namespace {

void check_simplex(const std::vector<Point3>& s) {
  if (s.empty() || s.size() > 4) throw KernelError("InvalidSimplex", "simplex needs 1 to 4 vertices");
}

KernelError degenerate() { return KernelError("DegenerateSimplex", "simplex is not affinely independent"); }

}  // namespace

Point3 circumcenter(const std::vector<Point3>& s) {
  check_simplex(s);
  if (s.size() == 1) return s[0];
  const Point3 u = s[1] - s[0];
  if (s.size() == 2) {
    if (sign(norm2(u)) == 0) throw degenerate();
    return {(s[0][0] + s[1][0]) / 2, (s[0][1] + s[1][1]) / 2, (s[0][2] + s[1][2]) / 2};
  }
  const Point3 w = s[2] - s[0];
  Point3 num;
  Rational den;
  if (s.size() == 3) {
    const Point3 n = cross(u, w);
    den = 2 * norm2(n);
    num = triangle_center_num(u, w, n);
  } else {
    const Point3 v = s[3] - s[0];
    den = 2 * det3(u, w, v);
    num = tet_center_num(u, w, v);
  }
  if (sign(den) == 0) throw degenerate();
  return {s[0][0] + num[0] / den, s[0][1] + num[1] / den, s[0][2] + num[2] / den};
}

Rational circumradius_sq(const std::vector<Point3>& s) {
  return norm2(circumcenter(s) - s[0]);
}

bool is_short(const std::vector<Point3>& s, const Rational& alpha_sq) { return circumradius_sq(s) <= alpha_sq; }

bool is_gabriel(const std::vector<Point3>& s, const std::vector<Point3>& points) {
  const Point3 c = circumcenter(s);
  const Rational r2 = norm2(s[0] - c);
  for (const auto& p : points)
    if (norm2(p - c) < r2) return false;
  return true;
}

}  // namespace kinalpha

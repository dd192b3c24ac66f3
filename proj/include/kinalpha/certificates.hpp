#pragma once

#include <vector>

#include "kinalpha/geometry.hpp"

namespace kinalpha {

// Sign conventions. orient is det [[1,a],[1,b],[1,c],[1,d]], positive for
// (0, e1, e2, e3). lifted is the 5x5 determinant with rows [1, x, y, z, |p|^2];
// for a positively oriented (a, b, c, d) it is negative iff e lies strictly
// inside the circumsphere. Radius certificates are positive iff the
// circumradius exceeds alpha; the threshold is always passed as alpha^2.
// Polynomial results are scaled to coprime integer coefficients.

Poly orient_poly(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const PolyPoint& d);
Poly lifted_poly(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const PolyPoint& d,
                 const PolyPoint& e);

/// Degree <= 2 in t.
Poly radius_poly_edge(const PolyPoint& a, const PolyPoint& b, const Rational& alpha_sq);
/// |ab|^2 |ac|^2 |bc|^2 - 4 alpha^2 |(b-a) x (c-a)|^2, degree <= 6.
Poly radius_poly_triangle(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const Rational& alpha_sq);
/// Circumcenter numerator/denominator form, degree <= 10. Equals
/// |(b-a) x (c-a)|^2 times the degree 6 form.
Poly radius_poly_triangle_deg10(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c,
                                const Rational& alpha_sq);
/// Degree <= 8.
Poly radius_poly_tet(const PolyPoint& a, const PolyPoint& b, const PolyPoint& c, const PolyPoint& d,
                     const Rational& alpha_sq);
/// Dispatch on simplex.size() in {2, 3, 4}.
Poly radius_poly(const std::vector<PolyPoint>& simplex, const Rational& alpha_sq, bool deg10_triangle = false);

/// Negative iff p lies strictly inside the smallest circumsphere of the
/// edge or triangle. Degree <= 2 (edge) or <= 6 (triangle).
Poly encroachment_poly(const std::vector<PolyPoint>& simplex, const PolyPoint& p);

Poly flip_certificate_5(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                        const LinearMotion& m4, const LinearMotion& m5);
Poly flip_certificate_4(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                        const LinearMotion& m4);
Poly radius_certificate_edge(const LinearMotion& m1, const LinearMotion& m2, const Rational& alpha_sq);
Poly radius_certificate_triangle(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                                 const Rational& alpha_sq);
Poly radius_certificate_triangle_deg10(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                                       const Rational& alpha_sq);
Poly radius_certificate_tet(const LinearMotion& m1, const LinearMotion& m2, const LinearMotion& m3,
                            const LinearMotion& m4, const Rational& alpha_sq);

// Static predicates on fixed positions.

int orient4(const Point3& a, const Point3& b, const Point3& c, const Point3& d);
int lifted_orient(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& e);

/// Squared radius of the smallest circumsphere; 0 for a single vertex.
/// Throws "DegenerateSimplex" for coincident, collinear or coplanar input.
Rational circumradius_sq(const std::vector<Point3>& simplex);
Point3 circumcenter(const std::vector<Point3>& simplex);
/// Circumradius <= alpha.
bool is_short(const std::vector<Point3>& simplex, const Rational& alpha_sq);
/// No point of `points` strictly inside the smallest circumsphere.
bool is_gabriel(const std::vector<Point3>& simplex, const std::vector<Point3>& points);

}  // namespace kinalpha

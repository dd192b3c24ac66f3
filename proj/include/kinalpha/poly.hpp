#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "kinalpha/rational.hpp"

namespace kinalpha {

/// Univariate polynomial in t over Q. coeffs()[i] multiplies t^i; trailing
/// zero coefficients are always stripped, so the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs);
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  /// a + b*t
  static Poly linear(const Rational& a, const Rational& b);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(int i) const;

  Rational operator()(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn((*this)(t)); }

  Poly derivative() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  /// Degree first, then coefficients from the top down. Any strict total order works
  /// for map keys; this one is cheap to evaluate.
  friend bool operator<(const Poly& a, const Poly& b);

  /// Primitive integer multiple with positive leading coefficient. Two polynomials
  /// that differ by a nonzero constant factor have the same canonical form.
  Poly canonical() const;
  /// Positive rational multiple with coprime integer coefficients (sign kept).
  Poly primitive() const;

  std::string to_string() const;

 private:
  Poly(std::vector<Integer> ints, const Integer& divisor);
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem);
/// Monic gcd over Q (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace kinalpha

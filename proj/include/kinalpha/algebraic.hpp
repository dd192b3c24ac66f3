#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kinalpha/poly.hpp"

namespace kinalpha {

enum class Order { LT = -1, EQ = 0, GT = 1 };

/// A real root of a square-free polynomial, pinned down by an isolating
/// interval with rational (dyadic after bisection) endpoints. Refinement
/// narrows the interval in place; the represented value never changes, so
/// it is safe to refine through a const reference.
class AlgebraicReal {
 public:
  AlgebraicReal() : AlgebraicReal(Rational(0)) {}
  /// Exact rational value.
  AlgebraicReal(const Rational& value);  // NOLINT(google-explicit-constructor)
  /// `defining` must be square-free with exactly one root in (lo, hi) and
  /// nonzero at both endpoints. Throws "InvalidInterval" otherwise.
  static AlgebraicReal isolated(Poly defining, Rational lo, Rational hi);

  const Poly& defining() const { return defining_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_rational() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }

  /// One bisection step. No-op for exact values.
  void bisect() const;
  /// Bisects until hi - lo <= width.
  void refine_to(const Rational& width) const;

  double to_double() const;
  std::string to_decimal(int digits) const;

  /// Value-stable isolating interval on the 2^-bits grid: the returned
  /// interval depends only on the value and the defining polynomial, not on
  /// how far this object happened to be refined before.
  std::pair<Rational, Rational> grid_interval(unsigned bits) const;

 private:
  Poly defining_;
  mutable Rational lo_;
  mutable Rational hi_;
  mutable std::optional<Rational> exact_;
  mutable int sign_lo_ = 0;
};

Order compare(const AlgebraicReal& a, const AlgebraicReal& b);
inline bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == Order::LT; }
inline bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == Order::EQ; }

/// Copy of `a` whose isolating interval has width <= width.
AlgebraicReal refine(const AlgebraicReal& a, const Rational& width);

/// A rational strictly between a and b; requires a < b.
Rational rational_between(const AlgebraicReal& a, const AlgebraicReal& b);

/// p / gcd(p, p'), canonical (primitive integer coefficients, positive lead).
Poly square_free_part(const Poly& p);

/// Sign variations of p over (lo, hi) after the Moebius map (lo, hi) -> (0, inf).
/// Upper bound on the number of roots in the open interval, same parity.
int descartes_bound(const Poly& p, const Rational& lo, const Rational& hi);

/// Sign of q at the algebraic value a (exact: -1, 0 or 1).
int sign_at(const Poly& q, const AlgebraicReal& a);
/// Sign of q on a small open interval right after a (q must not be zero).
int sign_after(const Poly& q, const AlgebraicReal& a);
/// Multiplicity of a as a root of q (0 if q(a) != 0). q must not be zero.
int root_multiplicity(const Poly& q, const AlgebraicReal& a);

struct KernelConfig {
  bool descartes_filter = true;  // certify empty intervals before subdividing
  bool root_cache = true;        // reuse isolations within one bending epoch
};

struct KernelStats {
  std::uint64_t isolations = 0;        // isolate_roots calls
  std::uint64_t cache_hits = 0;
  std::uint64_t empty_results = 0;     // calls (cache misses) with no root in (lo, hi]
  std::uint64_t filtered = 0;          // of those, dismissed by the Descartes fast path
};

/// Polynomials with their roots inside the current bending epoch.
class RootCache {
 public:
  /// Starts a new epoch ending at `end`; clears everything if it differs.
  void set_epoch_end(const Rational& end);
  const Rational& epoch_end() const { return epoch_end_; }
  std::size_t size() const { return entries_.size(); }
  void clear() { entries_.clear(); }

  const std::vector<AlgebraicReal>* find(const Poly& canonical, const Rational& lo, const Rational& hi) const;
  void store(const Poly& canonical, const Rational& lo, const Rational& hi, std::vector<AlgebraicReal> roots);

 private:
  using Key = std::tuple<Poly, Rational, Rational>;
  std::map<Key, std::vector<AlgebraicReal>> entries_;
  Rational epoch_end_ = -1;
};

/// All distinct real roots of p in (lo, hi], increasing. Throws
/// "ZeroPolynomial" for p == 0. `cache` may be null.
std::vector<AlgebraicReal> isolate_roots(const Poly& p, const Rational& lo, const Rational& hi,
                                         RootCache* cache = nullptr, const KernelConfig& config = {},
                                         KernelStats* stats = nullptr);

}  // namespace kinalpha

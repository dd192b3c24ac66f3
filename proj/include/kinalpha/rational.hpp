#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace kinalpha {

using Integer = mpz_class;
/// Arbitrary-precision rational; GMP keeps it canonical (den > 0, reduced).
using Rational = mpq_class;

/// Thrown for inputs or configurations the engine refuses to process.
/// `code()` is a stable identifier such as "ZeroPolynomial" or "DuplicatePoint".
class KernelError : public std::runtime_error {
 public:
  KernelError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p/q", "p", or a plain decimal such as "-0.125".
Rational parse_rational(std::string_view text);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Rational& q, int digits);

}  // namespace kinalpha

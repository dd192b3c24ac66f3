#include "kinalpha/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace kinalpha {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return KernelError("ParseError", "not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  try {
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw bad();
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const auto frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") throw bad();
      if (digits[0] == '+') digits.erase(0, 1);
      Integer den = 1;
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      Rational q(Integer(digits), den);
      q.canonicalize();
      return q;
    }
    for (char c : s)
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) throw bad();
    if (s[0] == '+') s.erase(0, 1);
    Rational q(s);
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

std::string to_decimal(const Rational& q, int digits) {
  mpf_class f(q, 64 + 4 * static_cast<mp_bitcnt_t>(digits));
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  return std::string(buf.data());
}

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::linear(const Rational& a, const Rational& b) { return Poly({a, b}); }

Rational Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

void Poly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Poly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(r));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

Poly Poly::canonical() const {
  if (is_zero()) return {};
  Integer l = 1;
  for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(coeffs_.size());
  Integer g = 0;
  for (const auto& c : coeffs_) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (sgn(ints.back()) < 0) g = -g;
  return Poly(std::move(ints), g);
}

Poly::Poly(std::vector<Integer> ints, const Integer& g) {
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& v : ints) out.emplace_back(Integer(v / g));
  coeffs_ = std::move(out);
}

Poly Poly::primitive() const {
  if (is_zero()) return {};
  Poly c = canonical();
  if (sgn(leading()) < 0) c *= Rational(-1);
  return c;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    const Rational a = abs(c);
    if (i == 0 || a != 1) os << kinalpha::to_string(a);
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
  if (den.is_zero()) throw KernelError("ZeroPolynomial", "division by the zero polynomial");
  std::vector<Rational> r = num.coeffs();
  const int dd = den.degree();
  const int nd = num.degree();
  std::vector<Rational> q(nd >= dd ? static_cast<std::size_t>(nd - dd + 1) : 0);
  const auto& dc = den.coeffs();
  for (int i = nd; i >= dd; --i) {
    const Rational f = r[static_cast<std::size_t>(i)] / den.leading();
    q[static_cast<std::size_t>(i - dd)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= f * dc[static_cast<std::size_t>(j)];
  }
  quot = Poly(std::move(q));
  if (static_cast<int>(r.size()) > dd) r.resize(static_cast<std::size_t>(std::max(dd, 0)));
  rem = Poly(std::move(r));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.canonical();
  Poly y = b.canonical();
  while (!y.is_zero()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = r.canonical();
  }
  if (x.is_zero()) return x;
  return x * (Rational(1) / x.leading());
}

}  // namespace kinalpha

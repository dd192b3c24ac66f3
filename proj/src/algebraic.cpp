#include "kinalpha/algebraic.hpp"

#include <algorithm>
#include <cmath>

namespace kinalpha {

namespace {

std::vector<Integer> integer_coeffs(const Poly& canonical) {
  std::vector<Integer> out;
  out.reserve(canonical.coeffs().size());
  for (const auto& c : canonical.coeffs()) out.push_back(c.get_num());
  return out;
}

int variations(const std::vector<Integer>& c) {
  int count = 0;
  int last = 0;
  for (const auto& x : c) {
    const int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Sign variations of (1+x)^n p((lo + hi x) / (1 + x)) with integer arithmetic.
int descartes_integer(const std::vector<Integer>& c, const Rational& lo, const Rational& hi) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return 0;
  Integer d;
  mpz_lcm(d.get_mpz_t(), lo.get_den_mpz_t(), hi.get_den_mpz_t());
  const Integer a = lo.get_num() * (d / lo.get_den());
  const Integer b = hi.get_num() * (d / hi.get_den());
  const Integer w = b - a;

  // acc(y) = d^n p((a + w y) / d), built by homogeneous Horner.
  std::vector<Integer> acc{c[n]};
  acc.reserve(n + 1);
  Integer dpow = 1;
  for (std::size_t i = n; i-- > 0;) {
    dpow *= d;
    acc.emplace_back(0);
    for (std::size_t j = acc.size() - 1; j > 0; --j) acc[j] = acc[j] * a + acc[j - 1] * w;
    acc[0] *= a;
    acc[0] += c[i] * dpow;
  }
  std::reverse(acc.begin(), acc.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j-- > i;) acc[j] += acc[j + 1];
  return variations(acc);
}

void isolate_open(const Poly& q, const std::vector<Integer>& ints, const Rational& l, const Rational& r,
                  int known_bound, std::vector<AlgebraicReal>& out) {
  const int v = known_bound >= 0 ? known_bound : descartes_integer(ints, l, r);
  if (v == 0) return;
  if (v == 1 && q.sign_at(l) != 0 && q.sign_at(r) != 0) {
    out.push_back(AlgebraicReal::isolated(q, l, r));
    return;
  }
  const Rational m = (l + r) / 2;
  isolate_open(q, ints, l, m, -1, out);
  if (q.sign_at(m) == 0) out.emplace_back(m);
  isolate_open(q, ints, m, r, -1, out);
}

Order from_int(int c) { return c < 0 ? Order::LT : (c > 0 ? Order::GT : Order::EQ); }

Order reverse(Order o) { return static_cast<Order>(-static_cast<int>(o)); }

// a is irrational-represented (not exact).
Order compare_with_rational(const AlgebraicReal& a, const Rational& r) {
  if (r <= a.lo()) return Order::GT;
  if (r >= a.hi()) return Order::LT;
  const int s = a.defining().sign_at(r);
  if (s == 0) return Order::EQ;
  return s == a.defining().sign_at(a.lo()) ? Order::GT : Order::LT;
}

}  // namespace

AlgebraicReal::AlgebraicReal(const Rational& value)
    : defining_(Poly({-value, Rational(1)}).canonical()), lo_(value), hi_(value), exact_(value) {}

AlgebraicReal AlgebraicReal::isolated(Poly defining, Rational lo, Rational hi) {
  AlgebraicReal out;
  out.defining_ = defining.canonical();
  const int sl = out.defining_.sign_at(lo);
  const int sh = out.defining_.sign_at(hi);
  if (!(lo < hi) || sl == 0 || sh == 0 || sl == sh)
    throw KernelError("InvalidInterval", "[" + to_string(lo) + ", " + to_string(hi) + "] does not isolate a root of " +
                                             out.defining_.to_string());
  out.lo_ = std::move(lo);
  out.hi_ = std::move(hi);
  out.exact_.reset();
  out.sign_lo_ = sl;
  return out;
}

void AlgebraicReal::bisect() const {
  if (exact_) return;
  Rational m = (lo_ + hi_) / 2;
  const int s = defining_.sign_at(m);
  if (s == 0) {
    lo_ = m;
    hi_ = m;
    exact_ = std::move(m);
  } else if (s == sign_lo_) {
    lo_ = std::move(m);
  } else {
    hi_ = std::move(m);
  }
}

void AlgebraicReal::refine_to(const Rational& width) const {
  while (!exact_ && hi_ - lo_ > width) bisect();
}

double AlgebraicReal::to_double() const {
  refine_to(Rational(1, 1u << 30) * Rational(1, 1u << 30));
  return Rational((lo_ + hi_) / 2).get_d();
}

std::pair<Rational, Rational> AlgebraicReal::grid_interval(unsigned bits) const {
  if (exact_) return {*exact_, *exact_};
  for (;; bits += 8) {
    Rational step(1);
    mpz_mul_2exp(step.get_den_mpz_t(), step.get_den_mpz_t(), bits);
    refine_to(step);
    if (exact_) return {*exact_, *exact_};
    Integer k;
    Rational scaled = lo_ / step;
    mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational cell_lo = Rational(k) * step;
    Rational split = cell_lo + step;
    if (split < hi_) {
      const int s = defining_.sign_at(split);
      if (s == 0) return {split, split};
      if (s == sign_lo_) cell_lo = split;
    }
    const Rational cell_hi = cell_lo + step;
    if (defining_.sign_at(cell_lo) != 0 && defining_.sign_at(cell_hi) != 0 &&
        descartes_bound(defining_, cell_lo, cell_hi) == 1)
      return {cell_lo, cell_hi};
  }
}

std::string AlgebraicReal::to_decimal(int digits) const {
  if (exact_) return kinalpha::to_decimal(*exact_, digits);
  // Enough bits for the requested digits around the magnitude of the value.
  const double mag = std::max(1.0, std::fabs(lo_.get_d()) + 1.0);
  const unsigned bits = static_cast<unsigned>(std::ceil(3.33 * digits + std::log2(mag))) + 8;
  const auto [l, h] = grid_interval(bits);
  return kinalpha::to_decimal((l + h) / 2, digits);
}

Order compare(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (&a == &b) return Order::EQ;
  const bool same = a.defining() == b.defining();
  bool distinct_known = false;
  for (int round = 0;; ++round) {
    if (a.is_rational() && b.is_rational()) return from_int(cmp(*a.exact(), *b.exact()));
    if (a.is_rational()) return reverse(compare_with_rational(b, *a.exact()));
    if (b.is_rational()) return compare_with_rational(a, *b.exact());
    if (a.hi() <= b.lo()) return Order::LT;
    if (b.hi() <= a.lo()) return Order::GT;
    if (!distinct_known && (same || round == 64)) {
      const Rational l = std::max(a.lo(), b.lo());
      const Rational h = std::min(a.hi(), b.hi());
      const Poly g = same ? a.defining() : gcd(a.defining(), b.defining());
      if (g.degree() >= 1) {
        const int sl = g.sign_at(l);
        const int sh = g.sign_at(h);
        if (sl != 0 && sh != 0) {
          if (sl != sh) return Order::EQ;
          distinct_known = true;
        }
      } else {
        distinct_known = true;
      }
    }
    a.bisect();
    b.bisect();
  }
}

AlgebraicReal refine(const AlgebraicReal& a, const Rational& width) {
  if (sgn(width) <= 0) throw KernelError("InvalidWidth", "refinement width must be positive");
  AlgebraicReal out = a;
  out.refine_to(width);
  return out;
}

Rational rational_between(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (compare(a, b) != Order::LT) throw KernelError("InvalidInterval", "rational_between needs a < b");
  while (!(a.hi() < b.lo())) {
    if (!a.is_rational()) a.bisect();
    if (!b.is_rational()) b.bisect();
  }
  return (a.hi() + b.lo()) / 2;
}

Poly square_free_part(const Poly& p) {
  if (p.is_zero()) throw KernelError("ZeroPolynomial", "square-free part of the zero polynomial");
  if (p.degree() == 0) return Poly::constant(1);
  const Poly g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p.canonical();
  Poly q, r;
  divmod(p, g, q, r);
  return q.canonical();
}

int descartes_bound(const Poly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw KernelError("ZeroPolynomial", "Descartes bound of the zero polynomial");
  if (!(lo < hi)) throw KernelError("InvalidInterval", "Descartes bound needs lo < hi");
  return descartes_integer(integer_coeffs(p.canonical()), lo, hi);
}

int sign_at(const Poly& q, const AlgebraicReal& a) {
  if (q.is_zero()) return 0;
  if (q.degree() == 0) return sgn(q.leading());
  if (a.is_rational()) return q.sign_at(*a.exact());
  const auto ints = integer_coeffs(q.canonical());
  auto settled = [&]() -> std::optional<int> {
    if (a.is_rational()) return q.sign_at(*a.exact());
    if (descartes_integer(ints, a.lo(), a.hi()) == 0) return q.sign_at((a.lo() + a.hi()) / 2);
    return std::nullopt;
  };
  for (int i = 0; i < 8; ++i) {
    if (auto s = settled()) return *s;
    a.bisect();
  }
  const Poly g = gcd(q, a.defining());
  if (g.degree() >= 1 && !a.is_rational() && g.sign_at(a.lo()) * g.sign_at(a.hi()) < 0) return 0;
  for (;;) {
    if (auto s = settled()) return *s;
    a.bisect();
  }
}

int root_multiplicity(const Poly& q, const AlgebraicReal& a) {
  if (q.is_zero()) throw KernelError("ZeroPolynomial", "multiplicity of a root of the zero polynomial");
  int k = 0;
  Poly d = q;
  while (sign_at(d, a) == 0) {
    d = d.derivative();
    ++k;
  }
  return k;
}

int sign_after(const Poly& q, const AlgebraicReal& a) {
  if (q.is_zero()) throw KernelError("ZeroPolynomial", "sign of the zero polynomial");
  Poly d = q;
  for (;;) {
    const int s = sign_at(d, a);
    if (s != 0) return s;
    d = d.derivative();
  }
}

void RootCache::set_epoch_end(const Rational& end) {
  if (end != epoch_end_) {
    entries_.clear();
    epoch_end_ = end;
  }
}

const std::vector<AlgebraicReal>* RootCache::find(const Poly& canonical, const Rational& lo, const Rational& hi) const {
  auto it = entries_.find(Key{canonical, lo, hi});
  return it == entries_.end() ? nullptr : &it->second;
}

void RootCache::store(const Poly& canonical, const Rational& lo, const Rational& hi, std::vector<AlgebraicReal> roots) {
  entries_.insert_or_assign(Key{canonical, lo, hi}, std::move(roots));
}

std::vector<AlgebraicReal> isolate_roots(const Poly& p, const Rational& lo, const Rational& hi, RootCache* cache,
                                         const KernelConfig& config, KernelStats* stats) {
  if (p.is_zero()) throw KernelError("ZeroPolynomial", "root isolation of the zero polynomial");
  if (!(lo < hi)) throw KernelError("InvalidInterval", "root isolation needs lo < hi");
  if (stats) ++stats->isolations;
  const bool use_cache = cache != nullptr && config.root_cache;
  Poly key;
  if (use_cache) {
    key = p.canonical();
    if (const auto* hit = cache->find(key, lo, hi)) {
      if (stats) ++stats->cache_hits;
      return *hit;
    }
  }

  const Poly q = square_free_part(p);
  std::vector<AlgebraicReal> roots;
  bool fast_path = false;
  if (q.degree() >= 1) {
    const auto ints = integer_coeffs(q);
    if (config.descartes_filter) {
      const int v = descartes_integer(ints, lo, hi);
      fast_path = v == 0;
      isolate_open(q, ints, lo, hi, v, roots);
      if (q.sign_at(hi) == 0) roots.emplace_back(hi);
    } else {
      // Isolate every real root, then keep those in (lo, hi].
      Rational bound = 0;
      for (const auto& c : q.coeffs()) bound = std::max(bound, Rational(abs(c) / abs(q.leading())));
      Integer b;
      mpz_cdiv_q(b.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
      b += 2;
      std::vector<AlgebraicReal> all;
      isolate_open(q, ints, Rational(-b), Rational(b), -1, all);
      const AlgebraicReal alo(lo), ahi(hi);
      for (auto& r : all)
        if (compare(r, alo) == Order::GT && compare(r, ahi) != Order::GT) roots.push_back(std::move(r));
    }
  }
  if (roots.empty() && stats) {
    ++stats->empty_results;
    if (fast_path) ++stats->filtered;
  }
  if (use_cache) cache->store(key, lo, hi, roots);
  return roots;
}

}  // namespace kinalpha

#include <doctest.h>

#include <algorithm>

#include "kinalpha/simulation.hpp"

using namespace kinalpha;

namespace {

Point3 P(const Rational& x, const Rational& y, const Rational& z) { return {x, y, z}; }

Trajectory fixed(VertexId id, const Point3& p, const std::vector<Rational>& times, Rational a = 0, Rational b = 1) {
  Trajectory t{id, a, b, {}};
  for (const auto& s : times)
    if (a <= s && s <= b) t.positions.push_back(p);
  return t;
}

RunResult run(const TrajectoryFile& f, const Rational& alpha_sq, int probes = 20) {
  RunOptions o;
  o.alpha.alpha_sq = alpha_sq;
  o.probes = probes;
  RunResult r = run_simulation(f, o);
  CHECK(r.mismatches.empty());
  return r;
}

std::vector<MedusaCell> with_origin(const RunResult& r, Origin o) {
  std::vector<MedusaCell> out;
  for (const auto& c : r.medusa)
    if (c.origin == o) out.push_back(c);
  return out;
}

TrajectoryFile double_pyramid(bool reverse) {
  TrajectoryFile f;
  f.times = {0, 1};
  const std::vector<Point3> ring{P(1, 0, 0), P(Rational(-3, 5), Rational(4, 5), 0), P(Rational(-3, 5), Rational(-4, 5), 0),
                                 P(0, 0, 1)};
  for (int i = 0; i < 4; ++i) f.trajectories.push_back(fixed(i, ring[static_cast<std::size_t>(i)], f.times));
  Point3 lo = P(0, 0, Rational(-3, 2)), hi = P(0, 0, Rational(-1, 2));
  if (reverse) std::swap(lo, hi);
  f.trajectories.push_back(Trajectory{4, 0, 1, {lo, hi}});
  return f;
}

// Triangle {0, 1, 2} in alpha, apexes 3 and 4 far above and below it.
TrajectoryFile triangle_with_visitor(bool insert) {
  TrajectoryFile f;
  f.times = {0, Rational(1, 2), 1};
  f.trajectories = {fixed(0, P(0, 0, 0), f.times), fixed(1, P(2, 0, 0), f.times), fixed(2, P(1, 2, 0), f.times),
                    fixed(3, P(1, 1, 5), f.times), fixed(4, P(1, 1, -5), f.times)};
  const Point3 u = P(1, Rational(7, 10), Rational(1, 10));
  f.trajectories.push_back(insert ? fixed(5, u, f.times, Rational(1, 2), 1) : fixed(5, u, f.times, 0, Rational(1, 2)));
  return f;
}

}  // namespace

TEST_CASE("builder bookkeeping") {
  MedusaBuilder m;
  m.start({0, 1}, {{0, 1}}, AlgebraicReal(0));
  CHECK_THROWS_WITH_AS(m.on_alpha_remove({0, 2}, AlgebraicReal(Rational(1, 3))), doctest::Contains("InvariantViolation"),
                       KernelError);
  m.on_alpha_remove({0, 1}, AlgebraicReal(Rational(1, 3)));
  m.on_alpha_add({0, 1}, AlgebraicReal(Rational(2, 3)));
  m.finalize(AlgebraicReal(1));
  check_medusa(m.output());
  std::vector<MedusaCell> edge;
  for (const auto& c : m.output())
    if (c.ids == Simplex{0, 1}) edge.push_back(c);
  REQUIRE(edge.size() == 2);
  CHECK(edge[0].origin == Origin::Initial);
  CHECK(edge[0].death == AlgebraicReal(Rational(1, 3)));
  CHECK(edge[1].origin == Origin::Final);
  CHECK(edge[1].birth == AlgebraicReal(Rational(2, 3)));
  CHECK(m.output().front().birth == AlgebraicReal(0));
}

TEST_CASE("invariant checks reject bad cells") {
  const AlgebraicReal a(Rational(1, 4)), b(Rational(1, 2)), zero(Rational(0)), one(Rational(1));
  CHECK_THROWS_AS(check_medusa({MedusaCell{{0, 1}, b, a, Origin::Radius}}), KernelError);
  CHECK_THROWS_AS(check_medusa({MedusaCell{{0, 1, 2, 3}, a, a, Origin::FlipFill}}), KernelError);
  CHECK_THROWS_AS(check_medusa({MedusaCell{{0, 1, 2, 3, 4}, a, b, Origin::FlipFill}}), KernelError);
  CHECK_THROWS_AS(check_medusa({MedusaCell{{0, 1}, zero, b, Origin::Initial}, MedusaCell{{0, 1}, a, one, Origin::Final}}),
                  KernelError);
  CHECK_NOTHROW(check_medusa({MedusaCell{{0, 1}, zero, a, Origin::Initial}, MedusaCell{{0, 1}, b, one, Origin::Final}}));
}

TEST_CASE("stationary points give the static alpha complex over [0, 1]") {
  TrajectoryFile f;
  f.times = {0, 1};
  const std::vector<Point3> pts{P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(3, 3, 3)};
  for (int i = 0; i < 5; ++i) f.trajectories.push_back(fixed(i, pts[static_cast<std::size_t>(i)], f.times));
  const RunResult r = run(f, 1);
  CHECK(r.counters.flips == 0);
  CHECK(r.counters.radius_events == 0);
  PointMap pos;
  for (int i = 0; i < 5; ++i) pos[i] = pts[static_cast<std::size_t>(i)];
  std::set<Simplex> expected = static_alpha_complex(delaunay(pos), pos, 1);
  for (int i = 0; i < 5; ++i) expected.insert({i});
  std::set<Simplex> got;
  for (const auto& c : r.medusa) {
    CHECK(c.origin == Origin::Final);
    CHECK(c.birth == AlgebraicReal(0));
    CHECK(c.death == AlgebraicReal(1));
    got.insert(c.ids);
  }
  CHECK(got == expected);
}

TEST_CASE("single radius event gives one cell with an algebraic endpoint") {
  // |ab|^2 = 1 + 4t^2 crosses 4 alpha0^2 = 4 at t = sqrt(3)/2.
  TrajectoryFile f;
  f.times = {0, 1};
  f.trajectories = {fixed(0, P(0, 0, 0), f.times), Trajectory{1, 0, 1, {P(1, 0, 0), P(1, 2, 0)}},
                    fixed(2, P(0, 10, 0), f.times), fixed(3, P(0, 0, 10), f.times)};
  const RunResult r = run(f, 1);
  CHECK(r.counters.radius_events == 1);
  std::size_t nontrivial = 0;
  for (const auto& c : r.medusa) {
    if (c.birth == AlgebraicReal(0) && c.death == AlgebraicReal(1)) continue;
    ++nontrivial;
    CHECK(c.ids == Simplex{0, 1});
    CHECK(c.origin == Origin::Initial);
    CHECK(c.death == AlgebraicReal::isolated(Poly{-3, 0, 4}, 0, 1));
  }
  CHECK(nontrivial == 1);
  for (const auto& c : r.medusa)
    if (c.ids == Simplex{0, 1}) CHECK(format_time(c.death).find("~0.866025403784") != std::string::npos);
}

TEST_CASE("short 2-3 and 3-2 flips emit one five-vertex fill") {
  for (bool reverse : {false, true}) {
    const RunResult r = run(double_pyramid(reverse), 100);
    REQUIRE(r.counters.flips == 1);
    const auto fills = with_origin(r, Origin::FlipFill);
    REQUIRE(fills.size() == 1);
    CHECK(fills[0].ids == Simplex{0, 1, 2, 3, 4});
    CHECK(fills[0].birth == AlgebraicReal(Rational(1, 2)));
    CHECK(fills[0].death == AlgebraicReal(Rational(1, 2)));
    std::size_t closed = 0, opened = 0;
    for (const auto& c : r.medusa) {
      if (c.ids.size() != 4) continue;
      closed += c.death == AlgebraicReal(Rational(1, 2));
      opened += c.birth == AlgebraicReal(Rational(1, 2));
    }
    CHECK(closed == (reverse ? 3u : 2u));
    CHECK(opened == (reverse ? 2u : 3u));
  }
}

TEST_CASE("non-short flip emits no fill") {
  const RunResult r = run(double_pyramid(false), Rational(1, 5));
  CHECK(r.counters.flips == 1);
  CHECK(with_origin(r, Origin::FlipFill).empty());
}

TEST_CASE("insertion killing an alpha triangle emits its join with the new vertex") {
  const RunResult r = run(triangle_with_visitor(true), 2);
  CHECK(r.counters.insertions == 1);
  const auto fills = with_origin(r, Origin::InsertFill);
  bool joined = false;
  for (const auto& c : fills) {
    CHECK(std::binary_search(c.ids.begin(), c.ids.end(), 5));
    CHECK(c.birth == AlgebraicReal(Rational(1, 2)));
    joined = joined || c.ids == Simplex{0, 1, 2, 5};
  }
  CHECK(joined);
  // Every fill matches a cell of the same simplex without the new vertex that dies at the insertion.
  for (const auto& c : fills) {
    Simplex s = c.ids;
    s.erase(std::find(s.begin(), s.end(), 5));
    CHECK(std::any_of(r.medusa.begin(), r.medusa.end(), [&](const MedusaCell& m) {
      return m.ids == s && m.death == AlgebraicReal(Rational(1, 2));
    }));
  }
}

TEST_CASE("deletion reviving an alpha triangle emits its join with the old vertex") {
  const RunResult r = run(triangle_with_visitor(false), 2);
  CHECK(r.counters.deletions == 1);
  bool joined = false;
  for (const auto& c : with_origin(r, Origin::DeleteFill)) {
    CHECK(std::binary_search(c.ids.begin(), c.ids.end(), 5));
    joined = joined || c.ids == Simplex{0, 1, 2, 5};
  }
  CHECK(joined);
  for (const auto& c : r.medusa)
    if (c.ids == Simplex{5}) CHECK(c.death == AlgebraicReal(Rational(1, 2)));
}

TEST_CASE("insertion outside every alpha simplex emits no fill") {
  TrajectoryFile f = triangle_with_visitor(true);
  f.trajectories.back().positions = {P(40, 40, 40), P(40, 40, 40)};
  const RunResult r = run(f, 2);
  CHECK(with_origin(r, Origin::InsertFill).empty());
}

TEST_CASE("random runs satisfy the medusa invariants") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GeneratorParams g;
    g.seed = seed;
    g.trajectories = 12;
    g.bends = 3;
    g.churn = 3;
    const RunResult r = run(generate(g), 6, 15);
    CHECK_NOTHROW(check_medusa(r.medusa));
    for (const auto& c : with_origin(r, Origin::FlipFill)) CHECK(c.ids.size() == 5);
  }
}

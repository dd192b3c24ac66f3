// Acceptance report: one PASS/FAIL line per acceptance property.
#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "kinalpha/simulation.hpp"

using namespace kinalpha;

namespace {

// Pinned thresholds.
constexpr int kOracleRuns = 20;
constexpr int kOracleProbes = 50;
constexpr int kDegreeInstances = 1000;
constexpr int kTriangleInstances = 500;
constexpr double kFilterTarget = 0.90;
constexpr double kPruneRatioLo = 1.5;
constexpr double kPruneRatioHi = 2.5;

using Clock = std::chrono::steady_clock;

bool g_all_pass = true;

void report(const char* name, bool pass, const std::string& detail) {
  g_all_pass = g_all_pass && pass;
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Positions come straight from the trajectory file; the
// triangulation is every 4-subset with an empty open circumsphere, evaluated
// with integer determinants after clearing denominators.

using IPoint = std::array<mpz_class, 3>;

mpz_class det3(const mpz_class (&m)[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

int orientation(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
  mpz_class m[3][3];
  for (int i = 0; i < 3; ++i) {
    m[0][i] = b[i] - a[i];
    m[1][i] = c[i] - a[i];
    m[2][i] = d[i] - a[i];
  }
  return sgn(det3(m));
}

// Sign of det [[q - e, |q - e|^2]] over q in {a, b, c, d}: for positively
// oriented abcd it is positive iff e is strictly inside the circumsphere.
int insphere(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d, const IPoint& e) {
  const IPoint* q[4] = {&a, &b, &c, &d};
  mpz_class r[4][4];
  for (int i = 0; i < 4; ++i) {
    r[i][3] = 0;
    for (int j = 0; j < 3; ++j) {
      r[i][j] = (*q[i])[j] - e[j];
      r[i][3] += r[i][j] * r[i][j];
    }
  }
  mpz_class det = 0;
  for (int skip = 0; skip < 4; ++skip) {
    mpz_class m[3][3];
    for (int i = 1; i < 4; ++i)
      for (int j = 0, col = 0; j < 4; ++j)
        if (j != skip) m[i - 1][col++] = r[i][j];
    const mpz_class minor = det3(m) * r[0][skip];
    det += (skip % 2 == 0) ? minor : mpz_class(-minor);
  }
  return -sgn(det);
}

struct OracleState {
  std::map<VertexId, Point3> pos;
  std::set<Simplex> cells;   // finite tetrahedra
  std::set<Simplex> alpha;   // edges and up
  bool degenerate = false;   // cospherical or coplanar configuration at the probe
};

std::map<VertexId, Point3> oracle_positions(const TrajectoryFile& f, const Rational& t) {
  std::map<VertexId, Point3> out;
  for (const auto& tr : f.trajectories) {
    if (!(tr.a < t && t < tr.b)) continue;
    std::size_t k = 0;
    while (f.times[k + 1] < t) ++k;
    const std::size_t j = k - static_cast<std::size_t>(
                                  std::find(f.times.begin(), f.times.end(), tr.a) - f.times.begin());
    const Rational s = (t - f.times[k]) / (f.times[k + 1] - f.times[k]);
    Point3 p;
    for (int i = 0; i < 3; ++i) p[i] = tr.positions[j][i] + s * (tr.positions[j + 1][i] - tr.positions[j][i]);
    out[tr.id] = p;
  }
  return out;
}

// Squared radius and centre of the smallest sphere through pts (Gram system).
std::pair<Rational, std::array<Rational, 3>> smallest_ball(const std::vector<Point3>& pts) {
  const std::size_t k = pts.size() - 1;
  std::vector<std::array<Rational, 3>> v(k);
  for (std::size_t i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) v[i][j] = pts[i + 1][j] - pts[0][j];
  auto dot = [](const std::array<Rational, 3>& x, const std::array<Rational, 3>& y) {
    return Rational(x[0] * y[0] + x[1] * y[1] + x[2] * y[2]);
  };
  std::vector<std::vector<Rational>> g(k, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(v[i], v[j]);
    g[i][k] = dot(v[i], v[i]) / 2;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (g[p][c] == 0) ++p;
    std::swap(g[p], g[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || g[r][c] == 0) continue;
      const Rational f = g[r][c] / g[c][c];
      for (std::size_t j = c; j <= k; ++j) g[r][j] -= f * g[c][j];
    }
  }
  std::array<Rational, 3> off{0, 0, 0};
  for (std::size_t i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) off[j] += g[i][k] / g[i][i] * v[i][j];
  std::array<Rational, 3> centre;
  for (int j = 0; j < 3; ++j) centre[j] = pts[0][j] + off[j];
  return {dot(off, off), centre};
}

OracleState oracle(const TrajectoryFile& f, const Rational& t, const Rational& alpha_sq) {
  OracleState o;
  o.pos = oracle_positions(f, t);
  std::vector<VertexId> ids;
  mpz_class den = 1;
  for (const auto& [v, p] : o.pos) {
    ids.push_back(v);
    for (const auto& x : p) den = lcm(den, x.get_den());
  }
  std::vector<IPoint> ip;
  for (const auto& [v, p] : o.pos) {
    IPoint q;
    for (int i = 0; i < 3; ++i) q[i] = p[i].get_num() * (den / p[i].get_den());
    ip.push_back(q);
  }
  const std::size_t n = ids.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const int s = orientation(ip[a], ip[b], ip[c], ip[d]);
          if (s == 0) continue;
          bool empty = true;
          for (std::size_t e = 0; e < n && empty; ++e) {
            if (e == a || e == b || e == c || e == d) continue;
            const int in = s * insphere(ip[a], ip[b], ip[c], ip[d], ip[e]);
            if (in == 0) o.degenerate = true;
            empty = in < 0;
          }
          if (empty) o.cells.insert({ids[a], ids[b], ids[c], ids[d]});
        }

  std::set<Simplex> faces;
  for (const auto& cell : o.cells)
    for (int mask = 3; mask < 16; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
      Simplex s;
      for (int i = 0; i < 4; ++i)
        if (mask & (1 << i)) s.push_back(cell[static_cast<std::size_t>(i)]);
      faces.insert(s);
    }
  for (const auto& s : faces) {
    std::vector<Point3> pts;
    for (VertexId v : s) pts.push_back(o.pos.at(v));
    const auto [r2, centre] = smallest_ball(pts);
    if (r2 > alpha_sq) continue;
    bool gabriel = true;
    for (const auto& [v, p] : o.pos) {
      Rational d2 = 0;
      for (int i = 0; i < 3; ++i) d2 += (p[i] - centre[i]) * (p[i] - centre[i]);
      if (d2 < r2) gabriel = false;
    }
    if (!gabriel) continue;
    for (int mask = 1; mask < (1 << s.size()); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
      Simplex g;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (mask & (1 << i)) g.push_back(s[i]);
      o.alpha.insert(g);
    }
  }
  return o;
}

std::set<Simplex> finite_cells(const KineticDelaunay& kd) {
  std::set<Simplex> out;
  for (const auto& [k, c] : kd.triangulation().cells())
    if (is_finite(k)) out.insert(Simplex(k.begin(), k.end()));
  return out;
}

}  // namespace

namespace {

struct SuiteCase {
  GeneratorParams gen;
  Rational alpha_sq;
};

std::vector<SuiteCase> oracle_suite() {
  const Rational alphas[] = {2, 4, 6, 10};
  std::vector<SuiteCase> out;
  for (int i = 0; i < kOracleRuns; ++i) {
    GeneratorParams g;
    g.seed = static_cast<std::uint64_t>(100 + i);
    g.trajectories = 8 + (i * 7) % 13;  // 8..20
    g.bends = 2 + i % 7;                // 2..8
    g.two_type_sorting = i % 2 == 1;
    g.churn = i % 3 == 2 ? 3 : 0;
    out.push_back({g, alphas[i % 4]});
  }
  return out;
}

struct OracleOutcome {
  bool pass = true;
  bool medusa_ok = true;
  std::string detail;
  std::string medusa_detail;
};

OracleOutcome oracle_equivalence() {
  OracleOutcome out;
  std::size_t probes = 0, mismatches = 0, failed_runs = 0, degenerate = 0, events = 0, medusa_violations = 0;
  for (const auto& sc : oracle_suite()) {
    const TrajectoryFile f = generate(sc.gen);
    RunOptions o;
    o.alpha.alpha_sq = sc.alpha_sq;
    o.probes = kOracleProbes;
    o.seed = sc.gen.seed;
    std::size_t run_mismatches = 0;
    o.probe_hook = [&](const ProbeView& v) {
      const OracleState s = oracle(f, v.time, sc.alpha_sq);
      if (s.degenerate) ++degenerate;
      std::set<Simplex> alpha = v.alpha.complex(), active, alive;
      for (const auto& c : v.medusa.active_simplices()) (c.size() == 1 ? alive : active).insert(c);
      std::set<Simplex> expected_alive;
      for (const auto& [id, p] : s.pos) expected_alive.insert({id});
      if (finite_cells(v.delaunay) != s.cells || alpha != s.alpha) ++run_mismatches;
      if (active != s.alpha || alive != expected_alive) ++medusa_violations;
    };
    try {
      const RunResult r = run_simulation(f, o);
      probes += r.probes_checked;
      events += r.events.size();
      mismatches += run_mismatches + r.mismatches.size();
      if (r.probes_checked + r.probes_skipped != static_cast<std::size_t>(kOracleProbes)) ++failed_runs;
      check_medusa(r.medusa);
      for (const auto& c : r.medusa)
        if (c.origin == Origin::FlipFill && (c.ids.size() != 5 || !(c.birth == c.death))) ++medusa_violations;
    } catch (const KernelError& e) {
      ++failed_runs;
      const std::string what = e.what();
      if (what.find("InvariantViolation") != std::string::npos) ++medusa_violations;
      std::cerr << "  seed " << sc.gen.seed << ": " << what << '\n';
    }
  }
  out.pass = mismatches == 0 && failed_runs == 0 && degenerate == 0 && probes > 0;
  out.medusa_ok = out.pass && medusa_violations == 0;
  std::ostringstream d;
  d << kOracleRuns << " runs, " << probes << " probes, " << events << " events, " << mismatches << " mismatches, "
    << failed_runs << " failed runs, " << degenerate << " degenerate probes";
  out.detail = d.str();
  std::ostringstream m;
  m << medusa_violations << " violations (per-event invariant, disjoint lifetimes, fills, probe active sets) over "
    << kOracleRuns << " runs";
  out.medusa_detail = m.str();
  return out;
}

// ---------------------------------------------------------------------------

Rational rnd(std::mt19937_64& rng, int lo, int hi) {
  return Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo);
}

LinearMotion random_motion(std::mt19937_64& rng) {
  LinearMotion m;
  for (int i = 0; i < 3; ++i) {
    m.start[i] = rnd(rng, -50, 50);
    m.end[i] = rnd(rng, -50, 50);
  }
  return m;
}

void degrees() {
  std::mt19937_64 rng(2024);
  int max5 = -1, max4 = -1, maxe = -1, maxt = -1, maxt10 = -1, maxtet = -1;
  for (int i = 0; i < kDegreeInstances; ++i) {
    LinearMotion m[5];
    for (auto& x : m) x = random_motion(rng);
    const Rational a(static_cast<long>(rng() % 1000) + 1);
    max5 = std::max(max5, flip_certificate_5(m[0], m[1], m[2], m[3], m[4]).degree());
    max4 = std::max(max4, flip_certificate_4(m[0], m[1], m[2], m[3]).degree());
    maxe = std::max(maxe, radius_certificate_edge(m[0], m[1], a).degree());
    maxt = std::max(maxt, radius_certificate_triangle(m[0], m[1], m[2], a).degree());
    maxt10 = std::max(maxt10, radius_certificate_triangle_deg10(m[0], m[1], m[2], a).degree());
    maxtet = std::max(maxtet, radius_certificate_tet(m[0], m[1], m[2], m[3], a).degree());
  }
  std::ostringstream d;
  d << kDegreeInstances << " instances, max flip5 " << max5 << " flip4 " << max4 << " edge " << maxe << " triangle "
    << maxt << " triangle-deg10 " << maxt10 << " tet " << maxtet;
  report("certificate degrees", max5 <= 5 && max4 <= 3 && maxe <= 2 && maxt <= 6 && maxt10 <= 10 && maxtet <= 8,
         d.str());
}

void triangle_roots() {
  std::mt19937_64 rng(77);
  std::size_t discrepancies = 0, with_roots = 0, roots = 0;
  for (int i = 0; i < kTriangleInstances; ++i) {
    LinearMotion m[3];
    for (auto& x : m)
      for (int j = 0; j < 3; ++j) {
        x.start[j] = rnd(rng, -10, 10);
        x.end[j] = rnd(rng, -10, 10);
      }
    const Rational a(static_cast<long>(rng() % 100) + 1, 2);
    const Poly p6 = radius_certificate_triangle(m[0], m[1], m[2], a);
    const Poly p10 = radius_certificate_triangle_deg10(m[0], m[1], m[2], a);
    PolyPoint c[3] = {m[0].coords(), m[1].coords(), m[2].coords()};
    const PolyPoint u = c[1] - c[0], w = c[2] - c[0];
    const Poly den = norm2(cross(u, w));
    auto valid_roots = [&](const Poly& p) {
      std::vector<AlgebraicReal> out;
      if (p.is_zero()) return out;
      for (auto& r : isolate_roots(p, 0, 1))
        if (den.is_zero() || sign_at(den, r) != 0) out.push_back(std::move(r));
      return out;
    };
    const auto r6 = valid_roots(p6), r10 = valid_roots(p10);
    bool same = r6.size() == r10.size() && p6.is_zero() == p10.is_zero();
    for (std::size_t k = 0; same && k < r6.size(); ++k) same = r6[k] == r10[k];
    discrepancies += !same;
    with_roots += !r6.empty();
    roots += r6.size();
  }
  std::ostringstream d;
  d << kTriangleInstances << " triangles (" << with_roots << " with roots, " << roots << " roots), " << discrepancies
    << " discrepancies";
  report("degree-6 triangle certificate root sets", discrepancies == 0 && with_roots > 0, d.str());
}

}  // namespace

namespace {

struct Outputs {
  RunResult result;
  std::string medusa;
  std::string stats;
};

Outputs run_outputs(const TrajectoryFile& f, const AlphaConfig& c) {
  RunOptions o;
  o.alpha = c;
  Outputs out{run_simulation(f, o), {}, {}};
  std::ostringstream m, s;
  write_medusa(m, out.result.medusa);
  write_stats(s, out.result);
  out.medusa = m.str();
  out.stats = s.str();
  return out;
}

bool same_events(const RunResult& a, const RunResult& b) {
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i)
    if (a.events[i].kind != b.events[i].kind || a.events[i].key != b.events[i].key ||
        !(a.events[i].time == b.events[i].time))
      return false;
  return true;
}

std::vector<TrajectoryFile> generator_datasets() {
  std::vector<TrajectoryFile> out;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    GeneratorParams g;
    g.seed = seed;
    g.trajectories = 20;
    g.bends = 8;
    g.two_type_sorting = seed % 2 == 0;
    g.churn = seed == 4 ? 4 : 0;
    out.push_back(generate(g));
  }
  return out;
}

constexpr long kGeneratorAlphaSq = 6;

void toggles_filter_determinism() {
  std::size_t differing = 0, failed = 0;
  std::uint64_t built_on = 0, built_off = 0, without_roots = 0, filtered = 0;
  bool strict_decrease = true, deterministic = true;
  for (const auto& f : generator_datasets()) {
    AlphaConfig base;
    base.alpha_sq = kGeneratorAlphaSq;
    try {
      const Outputs ref = run_outputs(f, base);
      const Outputs again = run_outputs(f, base);
      deterministic = deterministic && ref.medusa == again.medusa && ref.stats == again.stats;
      without_roots += ref.result.counters.certificates_without_roots;
      filtered += ref.result.counters.certificates_filtered;
      for (int opt : {1, 3, 4}) {
        AlphaConfig c = base;
        if (opt == 1) c.prune_certificates = false;
        if (opt == 3) c.descartes_filter = false;
        if (opt == 4) c.root_cache = false;
        const Outputs t = run_outputs(f, c);
        if (!same_events(ref.result, t.result) || ref.medusa != t.medusa) ++differing;
        if (opt == 1) {
          built_on += ref.result.counters.certificates_built;
          built_off += t.result.counters.certificates_built;
          strict_decrease = strict_decrease && ref.result.counters.certificates_built < t.result.counters.certificates_built;
        }
      }
    } catch (const KernelError& e) {
      ++failed;
      std::cerr << "  generator dataset: " << e.what() << '\n';
    }
  }
  const double ratio = built_on ? static_cast<double>(built_off) / static_cast<double>(built_on) : 0.0;
  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(3);
  d << "4 datasets x toggles {1, 3, 4}: " << differing << " differing runs, " << failed
    << " failed; certificates_built off/on = " << built_off << "/" << built_on << " = " << ratio << " (target "
    << kPruneRatioLo << "-" << kPruneRatioHi << (ratio >= kPruneRatioLo && ratio <= kPruneRatioHi ? ", met" : ", not met")
    << ")";
  report("optimization equivalence", differing == 0 && failed == 0 && strict_decrease, d.str());

  const double rate = without_roots ? static_cast<double>(filtered) / static_cast<double>(without_roots) : 0.0;
  std::ostringstream r;
  r.setf(std::ios::fixed);
  r.precision(4);
  r << filtered << "/" << without_roots << " root-free certificates dismissed by the fast path = " << rate
    << " (soft target " << kFilterTarget << ")";
  report("filter effectiveness", failed == 0 && rate >= kFilterTarget, r.str());

  report("determinism", failed == 0 && deterministic, "medusa and stats bytes identical across repeated runs of 4 datasets");
}

}  // namespace

int main() {
  auto timed = [&](const char* what, auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    std::cerr << "  [" << what << " " << std::chrono::duration<double>(Clock::now() - t0).count() << " s]\n";
  };
  OracleOutcome oe;
  timed("oracle suite", [&] { oe = oracle_equivalence(); });
  report("oracle equivalence", oe.pass, oe.detail);
  timed("degrees", degrees);
  timed("triangle roots", triangle_roots);
  timed("toggles", toggles_filter_determinism);
  report("medusa invariants", oe.medusa_ok, oe.medusa_detail);
  report("G-criticality consequence", oe.pass,
         "no Gabriel-monitoring certificates exist (event kinds: bending, delete, insert, flip, radius) and the oracle "
         "suite passes");
  return g_all_pass ? 0 : 1;
}

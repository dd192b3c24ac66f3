#include "kinalpha/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace kinalpha {

std::set<Simplex> static_alpha_complex(const Triangulation& tri, const PointMap& pos, const Rational& alpha_sq) {
  std::vector<Point3> all;
  for (const auto& [v, p] : pos) all.push_back(p);
  std::set<Simplex> out;
  for (const auto& s : tri.finite_simplices()) {
    if (out.count(s)) continue;
    std::vector<Point3> pts;
    for (VertexId v : s) pts.push_back(pos.at(v));
    if (!is_short(pts, alpha_sq) || !is_gabriel(pts, all)) continue;
    out.insert(s);
    for (auto& f : proper_faces(s)) out.insert(std::move(f));
  }
  return out;
}

namespace {

std::set<Simplex> with_vertices(std::set<Simplex> complex, const KineticDelaunay& kd) {
  for (const auto& [v, m] : kd.motions()) complex.insert({v});
  return complex;
}

std::string diff(const std::string& what, const std::set<Simplex>& kinetic, const std::set<Simplex>& rebuilt) {
  std::size_t extra = 0, missing = 0;
  std::string first;
  for (const auto& s : kinetic)
    if (!rebuilt.count(s) && extra++ == 0 && first.empty()) first = "extra " + describe(s);
  for (const auto& s : rebuilt)
    if (!kinetic.count(s) && missing++ == 0 && first.empty()) first = "missing " + describe(s);
  return what + ": " + std::to_string(extra) + " extra, " + std::to_string(missing) + " missing, first " + first;
}

}  // namespace

std::vector<std::string> compare_with_rebuild(const ProbeView& view) {
  std::vector<std::string> out;
  const std::string at = " at t = " + to_string(view.time);
  const PointMap pos = view.delaunay.positions(view.time);
  const Triangulation rebuilt = delaunay(pos);
  std::set<Simplex> kc, rc;
  for (const auto& [k, c] : view.delaunay.triangulation().cells()) kc.insert(Simplex(k.begin(), k.end()));
  for (const auto& [k, c] : rebuilt.cells()) rc.insert(Simplex(k.begin(), k.end()));
  if (kc != rc) out.push_back(diff("delaunay cells" + at, kc, rc));
  const std::set<Simplex> alpha = view.alpha.complex();
  const std::set<Simplex> expected = static_alpha_complex(rebuilt, pos, view.alpha.config().alpha_sq);
  if (alpha != expected) out.push_back(diff("alpha complex" + at, alpha, expected));
  const std::set<Simplex> active = view.medusa.active_simplices();
  const std::set<Simplex> full = with_vertices(expected, view.delaunay);
  if (active != full) out.push_back(diff("medusa active cells" + at, active, full));
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string where(const Event& e) {
  return std::string(to_string(e.kind)) + " " + describe(e.key) + " at t = " + format_time(e.time);
}

KernelError with_context(const KernelError& err, const std::string& context) {
  std::string msg = err.what();
  if (msg.rfind(err.code() + ": ", 0) == 0) msg.erase(0, err.code().size() + 2);
  return KernelError(err.code(), msg + " (" + context + ")");
}

void check_state(const KineticDelaunay& kd, const KineticAlpha& ka, const MedusaBuilder& medusa) {
  const std::set<Simplex> complex = ka.complex();
  for (const auto& s : complex)
    for (const auto& f : proper_faces(s))
      if (!complex.count(f)) throw KernelError("InvariantViolation", "face " + describe(f) + " of " + describe(s) + " is not in the alpha complex");
  for (const auto& [s, st] : ka.state()) {
    if (st.in_alpha && !st.is_short) throw KernelError("InvariantViolation", describe(s) + " is in alpha but not short");
    if (s.size() == 4 && st.in_alpha != st.is_short)
      throw KernelError("InvariantViolation", "tetrahedron " + describe(s) + " flags disagree");
  }
  if (medusa.active_simplices() != with_vertices(complex, kd))
    throw KernelError("InvariantViolation", "active medusa cells differ from the alpha complex");
}

std::vector<Rational> draw_probes(const TrajectoryFile& file, int count, std::uint64_t seed) {
  constexpr long kDen = 999983;
  std::mt19937_64 rng(seed);
  std::set<Rational> out;
  while (static_cast<int>(out.size()) < count) {
    Rational t(static_cast<long>(rng() % (kDen - 1)) + 1, kDen);
    t.canonicalize();
    if (!std::binary_search(file.times.begin(), file.times.end(), t)) out.insert(t);
  }
  return {out.begin(), out.end()};
}

}  // namespace

RunResult run_simulation(const TrajectoryFile& file, const RunOptions& opt) {
  const auto t_setup = Clock::now();
  validate(file);
  if (!(opt.alpha.alpha_sq > 0)) throw KernelError("InvalidInput", "alpha squared must be positive");
  RunResult res;
  EventQueue q;
  CertificateScheduler sched(opt.alpha.kernel());
  KineticDelaunay kd(q, sched);
  KineticAlpha ka(kd, q, sched, opt.alpha);
  MedusaBuilder medusa;
  const auto& times = file.times;

  std::map<VertexId, const Trajectory*> by_id;
  std::map<VertexId, LinearMotion> initial;
  for (const auto& tr : file.trajectories) {
    by_id[tr.id] = &tr;
    if (tr.a == 0) initial[tr.id] = file.segment(tr, 0);
  }
  if (initial.size() < 4) throw KernelError("DegenerateInput", "fewer than four trajectories alive at t = 0");

  sched.cache().set_epoch_end(times[1]);
  kd.initialize(initial, 0);
  ka.classify_initial(0);
  ka.install_radius_certificates(AlgebraicReal(0));
  std::vector<VertexId> alive;
  for (const auto& [v, m] : initial) alive.push_back(v);
  medusa.start(alive, ka.complex(), AlgebraicReal(0));

  for (const auto& tr : file.trajectories) {
    for (std::size_t k = 1; k + 1 < times.size(); ++k)
      if (tr.a < times[k] && times[k] < tr.b) q.push(Event{times[k], EventKind::Bending, {tr.id}, 0});
    if (tr.a > 0) q.push(Event{tr.a, EventKind::Insert, {tr.id}, 0});
    if (tr.b < 1) q.push(Event{tr.b, EventKind::Delete, {tr.id}, 0});
  }
  const std::vector<Rational> probes = draw_probes(file, opt.probes, opt.seed);
  res.seconds_setup = since(t_setup);

  std::size_t next_probe = 0;
  auto probe_until = [&](const AlgebraicReal& t) {
    const auto t0 = Clock::now();
    for (; next_probe < probes.size(); ++next_probe) {
      const Order o = compare(AlgebraicReal(probes[next_probe]), t);
      if (o == Order::GT) break;
      if (o == Order::EQ) {
        ++res.probes_skipped;
        continue;
      }
      const ProbeView view{probes[next_probe], kd, ka, medusa};
      for (auto& m : compare_with_rebuild(view)) res.mismatches.push_back(std::move(m));
      if (opt.probe_hook) opt.probe_hook(view);
      ++res.probes_checked;
    }
    res.seconds_probes += since(t0);
  };
  auto stale = [&](const Event& e) {
    return (e.kind == EventKind::Flip && !kd.is_current(e)) || (e.kind == EventKind::Radius && !ka.is_current(e));
  };

  EventCounters& c = res.counters;
  std::optional<AlgebraicReal> last_topology, last_kinetic;
  const AlgebraicReal end(1);
  const auto t_events = Clock::now();
  while (true) {
    while (!q.empty() && stale(q.top())) q.pop();
    if (q.empty() || !(q.top().time < end)) break;
    Event e = q.pop();
    probe_until(e.time);
    const AlgebraicReal now = e.time;
    try {
      switch (e.kind) {
        case EventKind::Bending: {
          const Rational t = *now.exact();
          const std::size_t k = file.time_index(t);
          std::vector<Event> batch{e};
          while (!q.empty() && q.top().kind == EventKind::Bending && q.top().time == now) batch.push_back(q.pop());
          std::vector<std::pair<VertexId, LinearMotion>> bends;
          std::vector<VertexId> ids;
          for (const auto& b : batch) {
            const VertexId v = b.key[0];
            bends.emplace_back(v, file.segment(*by_id.at(v), k));
            ids.push_back(v);
            res.events.push_back({now, EventKind::Bending, b.key});
          }
          sched.cache().set_epoch_end(times[k + 1]);
          kd.handle_bending(bends, now);
          ka.handle_bending(ids, now);
          c.bending_events += batch.size();
          break;
        }
        case EventKind::Insert: {
          const VertexId v = e.key[0];
          const Trajectory& tr = *by_id.at(v);
          const StarChange change = kd.insert_point(v, file.segment(tr, file.time_index(tr.a)), tr.a);
          medusa.on_insert(v, ka.handle_topology_change(change, now, false), now);
          last_topology = now;
          ++c.insertions;
          res.events.push_back({now, e.kind, e.key});
          break;
        }
        case EventKind::Delete: {
          const VertexId v = e.key[0];
          const StarChange change = kd.delete_point(v, by_id.at(v)->b);
          medusa.on_delete(v, ka.handle_topology_change(change, now, false), now);
          last_topology = now;
          ++c.deletions;
          res.events.push_back({now, e.kind, e.key});
          break;
        }
        case EventKind::Flip:
        case EventKind::Radius: {
          if ((last_topology && *last_topology == now) || (last_kinetic && *last_kinetic == now))
            throw KernelError("SimultaneousEvents", "another event happens at the same time");
          if (e.kind == EventKind::Flip) {
            const FlipResult f = kd.handle_flip(e);
            medusa.on_flip(f, ka.handle_topology_change(f.change, now, true), now);
            ++c.flips;
          } else {
            medusa.on_radius(ka.handle_radius_event(e), now);
            ++c.radius_events;
          }
          last_kinetic = now;
          res.events.push_back({now, e.kind, e.key});
          break;
        }
      }
      if (opt.check_invariants) check_state(kd, ka, medusa);
    } catch (const KernelError& err) {
      throw with_context(err, where(e));
    }
  }
  probe_until(end);
  res.seconds_events = since(t_events) - res.seconds_probes;

  medusa.finalize(end);
  if (opt.check_invariants) check_medusa(medusa.output());
  res.medusa = medusa.output();

  const KernelStats& ks = sched.stats();
  c.certificates_built = ka.certificates_built();
  c.flip_certificates_built = kd.certificates_built();
  c.certificates_filtered = ks.filtered;
  c.certificates_without_roots = ks.empty_results;
  c.root_isolations = ks.isolations;
  c.cache_hits = ks.cache_hits;
  return res;
}

std::string format_time(const AlgebraicReal& t, int digits) {
  if (t.is_rational()) return to_string(*t.exact());
  const auto [lo, hi] = t.grid_interval(64);
  if (lo == hi) return to_string(lo);
  std::string s = "root(";
  const Poly& p = t.defining();
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) s += ',';
    s += to_string(p.coeff(i));
  }
  return s + ";" + to_string(lo) + "," + to_string(hi) + ")~" + t.to_decimal(digits);
}

void write_medusa(std::ostream& out, const std::vector<MedusaCell>& cells, int digits) {
  out << "# kinalpha medusa: cell <dim> <ids> <origin> <birth> <death>\n";
  out << "cells " << cells.size() << '\n';
  for (const auto& c : cells) {
    out << "cell " << c.dimension();
    for (VertexId v : c.ids) out << ' ' << v;
    out << ' ' << to_string(c.origin) << ' ' << format_time(c.birth, digits) << ' ' << format_time(c.death, digits)
        << '\n';
  }
}

void write_stats(std::ostream& out, const RunResult& r, bool timings) {
  const EventCounters& c = r.counters;
  std::map<Origin, std::size_t> origins;
  for (const auto& cell : r.medusa) ++origins[cell.origin];
  out << "flips " << c.flips << '\n'
      << "radius_events " << c.radius_events << '\n'
      << "bending_events " << c.bending_events << '\n'
      << "insertions " << c.insertions << '\n'
      << "deletions " << c.deletions << '\n'
      << "certificates_built " << c.certificates_built << '\n'
      << "flip_certificates_built " << c.flip_certificates_built << '\n'
      << "root_isolations " << c.root_isolations << '\n'
      << "certificates_without_roots " << c.certificates_without_roots << '\n'
      << "certificates_filtered " << c.certificates_filtered << '\n'
      << "cache_hits " << c.cache_hits << '\n';
  if (c.certificates_without_roots > 0) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(4)
       << static_cast<double>(c.certificates_filtered) / static_cast<double>(c.certificates_without_roots);
    out << "filter_rate " << ss.str() << '\n';
  }
  out << "medusa_cells " << r.medusa.size() << '\n';
  for (const auto& [o, n] : origins) out << "medusa_" << to_string(o) << ' ' << n << '\n';
  out << "probes_checked " << r.probes_checked << '\n'
      << "probes_skipped " << r.probes_skipped << '\n'
      << "probe_mismatches " << r.mismatches.size() << '\n';
  if (timings) {
    out << std::fixed << std::setprecision(6) << "seconds_setup " << r.seconds_setup << '\n'
        << "seconds_events " << r.seconds_events << '\n'
        << "seconds_probes " << r.seconds_probes << '\n';
  }
}

}  // namespace kinalpha

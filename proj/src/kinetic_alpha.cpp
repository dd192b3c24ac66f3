#include "kinalpha/kinetic_alpha.hpp"

#include <algorithm>

namespace kinalpha {

std::vector<Simplex> proper_faces(const Simplex& s) {
  std::vector<Simplex> out;
  const int n = static_cast<int>(s.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
    Simplex f;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) f.push_back(s[static_cast<std::size_t>(i)]);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

bool contains(const Key4& k, const Simplex& s) {
  return std::all_of(s.begin(), s.end(), [&](VertexId v) { return std::find(k.begin(), k.end(), v) != k.end(); });
}

Simplex finite_part(const Key4& k) {
  Simplex out;
  for (VertexId v : k)
    if (v != INFINITE) out.push_back(v);
  return out;
}

// Finite simplices (two or more vertices) of the given cells.
std::set<Simplex> closure(const std::vector<Cell>& cells) {
  std::set<Simplex> out;
  for (const auto& c : cells) {
    const Simplex f = finite_part(key_of(c));
    if (f.size() >= 2) out.insert(f);
    for (auto& g : proper_faces(f)) out.insert(std::move(g));
  }
  return out;
}

bool exists(const Triangulation& tri, const Simplex& s) {
  if (!tri.has_vertex(s[0])) return false;
  for (const auto& k : tri.star(s[0]))
    if (contains(k, s)) return true;
  return false;
}

}  // namespace

std::set<Simplex> KineticAlpha::cofaces(const Simplex& s) const {
  std::set<Simplex> out;
  for (const auto& k : kd_.triangulation().star(s[0])) {
    if (!contains(k, s)) continue;
    const Simplex f = finite_part(k);
    if (f.size() > s.size()) out.insert(f);
    for (auto& g : proper_faces(f))
      if (g.size() > s.size() && std::includes(g.begin(), g.end(), s.begin(), s.end())) out.insert(std::move(g));
  }
  return out;
}

std::set<VertexId> KineticAlpha::link_vertices(const Simplex& s) const {
  std::set<VertexId> out;
  for (const auto& k : kd_.triangulation().star(s[0])) {
    if (!contains(k, s)) continue;
    for (VertexId v : k)
      if (v != INFINITE && !std::binary_search(s.begin(), s.end(), v)) out.insert(v);
  }
  return out;
}

std::vector<PolyPoint> KineticAlpha::points(const Simplex& s) const {
  std::vector<PolyPoint> out;
  for (VertexId v : s) out.push_back(kd_.coords().at(v));
  return out;
}

Poly KineticAlpha::radius(const Simplex& s) const {
  return radius_poly(points(s), config_.alpha_sq, !config_.degree6_triangle);
}

std::set<Simplex> KineticAlpha::complex() const {
  std::set<Simplex> out;
  for (const auto& [s, st] : state_)
    if (st.in_alpha) out.insert(s);
  return out;
}

void KineticAlpha::classify_initial(const Rational& t) {
  state_.clear();
  certs_.clear();
  const PointMap pos = kd_.positions(t);
  std::vector<Point3> all;
  for (const auto& [v, p] : pos) all.push_back(p);
  const auto simplices = kd_.triangulation().finite_simplices();
  for (const auto& s : simplices) {
    std::vector<Point3> pts;
    for (VertexId v : s) pts.push_back(pos.at(v));
    state_[s].is_short = is_short(pts, config_.alpha_sq);
  }
  for (std::size_t dim = 4; dim >= 2; --dim)
    for (const auto& s : simplices) {
      if (s.size() != dim) continue;
      SimplexState& st = state_.at(s);
      if (!st.is_short) continue;
      if (dim == 4) {
        st.in_alpha = true;
        continue;
      }
      bool in = false;
      for (const auto& c : cofaces(s))
        if (c.size() == dim + 1 && state_.at(c).in_alpha) in = true;
      if (!in) {
        std::vector<Point3> pts;
        for (VertexId v : s) pts.push_back(pos.at(v));
        in = is_gabriel(pts, all);
      }
      st.in_alpha = in;
    }
}

void KineticAlpha::install_radius_certificates(const AlgebraicReal& now) {
  for (const auto& [s, st] : state_)
    if (needs_certificate(s)) install(s, now);
}

bool KineticAlpha::needs_certificate(const Simplex& s) const {
  if (!config_.prune_certificates) return true;
  if (s.size() > 2)
    for (const auto& f : proper_faces(s))
      if (!state_.at(f).is_short) return false;
  for (const auto& c : cofaces(s))
    if (state_.at(c).is_short) return false;
  return true;
}

void KineticAlpha::install(const Simplex& s, const AlgebraicReal& now) {
  Poly p = radius(s);
  if (p.is_zero())
    throw KernelError("DegenerateCertificate", "radius certificate of " + describe(s) + " vanishes identically");
  SimplexState& st = state_.at(s);
  const auto [lo, hi] = kd_.validity(s);
  RadiusCertificate c;
  c.token = sched_.next_token();
  c.time = sched_.next_change(p, st.is_short ? -1 : 1, now, lo, hi, true);
  c.poly = std::move(p);
  ++built_;
  if (c.time) queue_.push(Event{*c.time, EventKind::Radius, s, c.token});
  certs_[s] = std::move(c);
  st.has_radius_certificate = true;
}

void KineticAlpha::update_certificates(const std::set<Simplex>& affected, const AlgebraicReal& now) {
  for (const auto& s : affected) {
    auto it = state_.find(s);
    if (it == state_.end()) continue;
    const bool need = needs_certificate(s);
    if (need && !it->second.has_radius_certificate) install(s, now);
    if (!need && it->second.has_radius_certificate) {
      certs_.erase(s);
      it->second.has_radius_certificate = false;
    }
  }
}

bool KineticAlpha::gabriel_after(const Simplex& s, const AlgebraicReal& now) const {
  const auto pts = points(s);
  for (VertexId v : link_vertices(s)) {
    const Poly e = encroachment_poly(pts, kd_.coords().at(v));
    if (!e.is_zero() && sign_after(e, now) < 0) return false;
  }
  return true;
}

void KineticAlpha::recompute(const std::set<Simplex>& affected, const AlgebraicReal& now,
                             std::map<Simplex, bool>& before) {
  for (std::size_t dim = 4; dim >= 2; --dim)
    for (const auto& s : affected) {
      if (s.size() != dim) continue;
      SimplexState& st = state_.at(s);
      before.emplace(s, st.in_alpha);
      bool in = st.is_short;
      if (in && dim < 4) {
        in = false;
        for (const auto& c : cofaces(s))
          if (c.size() == dim + 1 && state_.at(c).in_alpha) in = true;
        if (!in) in = gabriel_after(s, now);
      }
      st.in_alpha = in;
    }
}

namespace {

void collect(const std::map<Simplex, bool>& before, const std::map<Simplex, SimplexState>& state, AlphaDelta& d) {
  for (const auto& [s, was] : before) {
    const bool is = state.at(s).in_alpha;
    if (is && !was) d.added.push_back(s);
    if (was && !is) d.removed.push_back(s);
  }
}

}  // namespace

bool KineticAlpha::is_current(const Event& e) const {
  if (e.kind != EventKind::Radius) return false;
  auto it = certs_.find(e.key);
  return it != certs_.end() && it->second.token == e.token;
}

AlphaDelta KineticAlpha::handle_radius_event(const Event& e) {
  const Simplex& s = e.key;
  const AlgebraicReal& now = e.time;
  SimplexState& st = state_.at(s);
  st.is_short = !st.is_short;
  install(s, now);

  std::set<Simplex> affected{s};
  for (auto& f : proper_faces(s)) affected.insert(std::move(f));
  std::map<Simplex, bool> before;
  recompute(affected, now, before);

  std::set<Simplex> prune = affected;
  for (auto& c : cofaces(s)) prune.insert(std::move(c));
  prune.erase(s);
  update_certificates(prune, now);

  AlphaDelta d;
  collect(before, state_, d);
  return d;
}

AlphaDelta KineticAlpha::handle_topology_change(const StarChange& change, const AlgebraicReal& now, bool flip) {
  const Triangulation& tri = kd_.triangulation();
  AlphaDelta d;
  for (const auto& s : closure(change.removed)) {
    if (exists(tri, s)) continue;
    auto it = state_.find(s);
    if (it == state_.end()) continue;
    if (it->second.in_alpha) d.removed.push_back(s);
    certs_.erase(s);
    state_.erase(it);
  }

  const std::set<Simplex> affected = closure(change.added);
  bool any_finite_tet = false;
  d.all_short = true;
  for (const auto& s : affected) {
    if (state_.count(s)) continue;
    const Poly p = radius(s);
    if (p.is_zero())
      throw KernelError("DegenerateCertificate", "radius certificate of " + describe(s) + " vanishes identically");
    if (flip && s.size() == 4 && sign_at(p, now) == 0)
      throw KernelError("SimultaneousEvents",
                        "flip of a tetrahedron with circumradius alpha at " + now.to_decimal(12) + " " + describe(s));
    SimplexState& st = state_[s];
    st.is_short = sign_after(p, now) < 0;
    if (s.size() == 4) {
      any_finite_tet = true;
      d.all_short = d.all_short && st.is_short;
    }
  }
  d.all_short = flip && any_finite_tet && d.all_short;
  for (const auto& c : change.added)
    if (!is_finite(key_of(c))) d.all_short = false;

  std::map<Simplex, bool> before;
  recompute(affected, now, before);
  collect(before, state_, d);
  update_certificates(affected, now);
  return d;
}

std::size_t KineticAlpha::handle_bending(const std::vector<VertexId>& bent, const AlgebraicReal& now) {
  std::vector<Simplex> redo;
  for (const auto& [s, c] : certs_)
    if (std::any_of(bent.begin(), bent.end(), [&](VertexId v) { return std::binary_search(s.begin(), s.end(), v); }))
      redo.push_back(s);
  for (const auto& s : redo) install(s, now);
  return redo.size();
}

}  // namespace kinalpha

#include "kinalpha/kinetic_delaunay.hpp"

#include <algorithm>

namespace kinalpha {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Bending:
      return "BENDING";
    case EventKind::Delete:
      return "DELETE";
    case EventKind::Insert:
      return "INSERT";
    case EventKind::Flip:
      return "FLIP";
    case EventKind::Radius:
      return "RADIUS";
  }
  return "?";
}

std::string describe(const std::vector<VertexId>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += ids[i] == INFINITE ? std::string("inf") : std::to_string(ids[i]);
  }
  return s + "}";
}

bool EventQueue::Later::operator()(const Event& a, const Event& b) const {
  const Order o = compare(a.time, b.time);
  if (o != Order::EQ) return o == Order::GT;
  if (a.kind != b.kind) return a.kind > b.kind;
  if (a.key != b.key) return a.key > b.key;
  return a.token > b.token;
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  return e;
}

std::optional<AlgebraicReal> CertificateScheduler::next_change(const Poly& cert, int state, const AlgebraicReal& now,
                                                               const Rational& lo, const Rational& hi,
                                                               bool abort_tangential) {
  if (sign_after(cert, now) != state) return now;
  if (!(lo < hi)) return std::nullopt;
  const auto roots = isolate_roots(cert, lo, hi, config_.root_cache ? &cache_ : nullptr, config_, &stats_);
  for (const auto& r : roots) {
    if (compare(r, now) != Order::GT) continue;
    if (sign_after(cert, r) != state) return r;
    if (abort_tangential)
      throw KernelError("TangentialRoot", "certificate touches zero without changing sign near " + r.to_decimal(12));
  }
  return std::nullopt;
}

namespace {

// Even permutation of c with v in front.
Cell to_front(Cell c, VertexId v) {
  const auto i = static_cast<std::size_t>(std::find(c.begin(), c.end(), v) - c.begin());
  if (i == 0) return c;
  std::swap(c[0], c[i]);
  if (i == 1) std::swap(c[2], c[3]);
  if (i == 2) std::swap(c[1], c[3]);
  if (i == 3) std::swap(c[1], c[2]);
  return c;
}

// Even permutation of c with x in front and y last.
Cell to_front_back(Cell c, VertexId x, VertexId y) {
  c = to_front(c, x);
  const auto j = static_cast<std::size_t>(std::find(c.begin(), c.end(), y) - c.begin());
  if (j != 3) {
    std::swap(c[j], c[3]);
    std::swap(c[1], c[2]);
  }
  return c;
}

KernelError unflippable(const std::string& what) { return KernelError("UnflippableEvent", what); }

}  // namespace

void KineticDelaunay::initialize(const std::map<VertexId, LinearMotion>& motions, const Rational& t) {
  motions_ = motions;
  coords_.clear();
  certs_.clear();
  for (const auto& [v, m] : motions_) coords_[v] = m.coords();
  tri_ = delaunay(positions(t));
  const AlgebraicReal now(t);
  for (const auto& [f, cs] : tri_.faces()) rebuild_face(f, now);
}

PointMap KineticDelaunay::positions(const Rational& t) const {
  PointMap out;
  for (const auto& [v, m] : motions_) out[v] = m.at(t);
  return out;
}

std::pair<Rational, Rational> KineticDelaunay::validity(const std::vector<VertexId>& ids) const {
  std::optional<Rational> lo, hi;
  for (VertexId v : ids) {
    if (v == INFINITE) continue;
    const auto& m = motions_.at(v);
    if (!lo || *lo < m.t_lo) lo = m.t_lo;
    if (!hi || m.t_hi < *hi) hi = m.t_hi;
  }
  return {*lo, *hi};
}

bool KineticDelaunay::is_current(const Event& e) const {
  if (e.kind != EventKind::Flip || e.key.size() != 3) return false;
  auto it = certs_.find(Key3{e.key[0], e.key[1], e.key[2]});
  return it != certs_.end() && it->second.token == e.token;
}

Poly KineticDelaunay::face_certificate(const Key3& f) const {
  const auto& cs = tri_.cells_of_face(f);
  return lifted_certificate(tri_.cell(cs[0]), Triangulation::opposite(cs[1], f), coords_);
}

void KineticDelaunay::rebuild_face(const Key3& f, const AlgebraicReal& now) {
  const auto& cs = tri_.cells_of_face(f);
  std::vector<VertexId> ids(f.begin(), f.end());
  ids.push_back(Triangulation::opposite(cs[0], f));
  ids.push_back(Triangulation::opposite(cs[1], f));
  Poly p = face_certificate(f);
  if (p.is_zero())
    throw KernelError("DegenerateCertificate", "flip certificate of " + describe(ids) + " vanishes identically");
  const auto [lo, hi] = validity(ids);
  FlipCertificate c;
  c.token = sched_.next_token();
  c.time = sched_.next_change(p, 1, now, lo, hi, false);
  c.poly = std::move(p);
  ++built_;
  if (c.time) queue_.push(Event{*c.time, EventKind::Flip, {f.begin(), f.end()}, c.token});
  certs_[f] = std::move(c);
}

void KineticDelaunay::apply(const StarChange& change, const AlgebraicReal& now) {
  std::set<Key3> touched;
  for (const auto& c : change.removed)
    for (int i = 0; i < 4; ++i) touched.insert(face_of(c, i));
  for (const auto& c : change.added)
    for (int i = 0; i < 4; ++i) touched.insert(face_of(c, i));
  for (const auto& f : touched) {
    if (tri_.has_face(f)) rebuild_face(f, now);
    else certs_.erase(f);
  }
}

FlipResult KineticDelaunay::handle_flip(const Event& e) {
  const AlgebraicReal& now = e.time;
  const Key3 f{e.key[0], e.key[1], e.key[2]};
  const auto cs = tri_.cells_of_face(f);
  const VertexId d = Triangulation::opposite(cs[0], f);
  const VertexId q = Triangulation::opposite(cs[1], f);

  FlipResult out;
  out.five = {f[0], f[1], f[2], d, q};
  std::sort(out.five.begin(), out.five.end());
  StarChange& ch = out.change;

  for (int i = 0; i < 3 && out.two_three; ++i) {
    const VertexId x = f[static_cast<std::size_t>((i + 1) % 3)];
    const VertexId y = f[static_cast<std::size_t>((i + 2) % 3)];
    Key4 third{x, y, d, q};
    std::sort(third.begin(), third.end());
    if (!tri_.has_cell(third)) continue;
    // Edge xy has ring {f[i], d, q}: 3-2 flip.
    out.two_three = false;
    const Cell a = to_front_back(tri_.cell(cs[0]), x, y);  // (x, p, r, y) with {p, r} = {f[i], d}
    ch.removed = {tri_.cell(cs[0]), tri_.cell(cs[1]), tri_.cell(third)};
    ch.added = {Cell{x, a[1], a[2], q}, Cell{y, a[1], q, a[2]}};
  }
  if (out.two_three) {
    if (tri_.has_edge(d, q)) throw unflippable("edge " + describe({d, q}) + " already exists at a 2-3 flip");
    const Cell a = to_front(tri_.cell(cs[0]), d);  // (d, x, y, z)
    ch.removed = {tri_.cell(cs[0]), tri_.cell(cs[1])};
    ch.added = {Cell{d, a[1], a[2], q}, Cell{d, a[2], a[3], q}, Cell{d, a[3], a[1], q}};
  }
  for (const auto& c : ch.added) {
    if (!is_finite(key_of(c))) continue;
    const Poly o = orient_poly(coords_.at(c[0]), coords_.at(c[1]), coords_.at(c[2]), coords_.at(c[3]));
    if (o.is_zero() || sign_after(o, now) <= 0)
      throw unflippable("flip of " + describe(out.five) + " would create an inverted cell");
  }
  for (const auto& c : ch.removed) tri_.remove_cell(key_of(c));
  for (const auto& c : ch.added) tri_.add_cell(c);
  apply(ch, now);
  return out;
}

std::size_t KineticDelaunay::handle_bending(const std::vector<std::pair<VertexId, LinearMotion>>& bends,
                                            const AlgebraicReal& now) {
  std::set<Key3> faces;
  for (const auto& [v, m] : bends) {
    motions_.at(v) = m;
    coords_.at(v) = m.coords();
    for (const auto& k : tri_.star(v))
      for (int i = 0; i < 4; ++i) faces.insert(face_of(tri_.cell(k), i));
  }
  for (const auto& f : faces) rebuild_face(f, now);
  return faces.size();
}

StarChange KineticDelaunay::insert_point(VertexId v, const LinearMotion& m, const Rational& t) {
  if (motions_.count(v)) throw KernelError("DuplicatePoint", "vertex " + std::to_string(v) + " already present");
  motions_[v] = m;
  coords_[v] = m.coords();
  const StarChange change = insert_vertex(tri_, v, positions(t));
  apply(change, AlgebraicReal(t));
  return change;
}

StarChange KineticDelaunay::delete_point(VertexId v, const Rational& t) {
  if (!motions_.count(v)) throw KernelError("NoSuchVertex", "vertex " + std::to_string(v) + " is not present");
  PointMap pos = positions(t);
  pos.erase(v);
  if (pos.size() < 4) throw KernelError("DegenerateInput", "fewer than four vertices would remain");
  const Triangulation rebuilt = delaunay(pos);
  StarChange change;
  for (const auto& [k, c] : tri_.cells())
    if (!rebuilt.has_cell(k)) {
      if (std::find(k.begin(), k.end(), v) == k.end())
        throw KernelError("DegenerateInput", "deleting vertex " + std::to_string(v) + " changes cells outside its star");
      change.removed.push_back(c);
    }
  for (const auto& [k, c] : rebuilt.cells())
    if (!tri_.has_cell(k)) change.added.push_back(c);
  for (const auto& c : change.removed) tri_.remove_cell(key_of(c));
  for (const auto& c : change.added) tri_.add_cell(c);
  motions_.erase(v);
  coords_.erase(v);
  apply(change, AlgebraicReal(t));
  return change;
}

}  // namespace kinalpha

#include "kinalpha/triangulation.hpp"

#include <algorithm>

namespace kinalpha {

namespace {

const std::set<Key4> kNoCells;

int permutation_parity(std::array<VertexId, 3> a) {
  int swaps = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j + 1 < 3 - i; ++j)
      if (a[static_cast<std::size_t>(j)] > a[static_cast<std::size_t>(j + 1)]) {
        std::swap(a[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(j + 1)]);
        ++swaps;
      }
  return swaps % 2 == 0 ? 1 : -1;
}

// Orientation induced on the i-th face, relative to the sorted order.
int induced_orientation(const Cell& c, int i) {
  std::array<VertexId, 3> f;
  for (int k = 0, j = 0; k < 4; ++k)
    if (k != i) f[static_cast<std::size_t>(j++)] = c[static_cast<std::size_t>(k)];
  return (i % 2 == 0 ? 1 : -1) * permutation_parity(f);
}

KernelError invalid(const std::string& what) { return KernelError("InvalidTriangulation", what); }

}  // namespace

Key4 key_of(const Cell& c) {
  Key4 k = c;
  std::sort(k.begin(), k.end());
  return k;
}

Key3 face_of(const Cell& c, int i) {
  Key3 f;
  for (int k = 0, j = 0; k < 4; ++k)
    if (k != i) f[static_cast<std::size_t>(j++)] = c[static_cast<std::size_t>(k)];
  std::sort(f.begin(), f.end());
  return f;
}

bool is_finite(const Key4& k) { return k[0] != INFINITE; }
bool is_finite(const Key3& k) { return k[0] != INFINITE; }

void Triangulation::add_cell(const Cell& c) {
  const Key4 k = key_of(c);
  if (cells_.count(k)) throw invalid("cell added twice");
  for (int i = 0; i < 4; ++i) {
    auto& v = faces_[face_of(c, i)];
    if (v.size() >= 2) throw invalid("face would have three cells");
    v.push_back(k);
  }
  for (VertexId v : c)
    if (v != INFINITE) star_[v].insert(k);
  cells_.emplace(k, c);
}

void Triangulation::remove_cell(const Key4& k) {
  auto it = cells_.find(k);
  if (it == cells_.end()) throw invalid("no such cell");
  for (int i = 0; i < 4; ++i) {
    const Key3 f = face_of(it->second, i);
    auto fit = faces_.find(f);
    auto& v = fit->second;
    v.erase(std::find(v.begin(), v.end(), k));
    if (v.empty()) faces_.erase(fit);
  }
  for (VertexId v : k) {
    if (v == INFINITE) continue;
    auto sit = star_.find(v);
    sit->second.erase(k);
    if (sit->second.empty()) star_.erase(sit);
  }
  cells_.erase(it);
}

const Cell& Triangulation::cell(const Key4& k) const {
  auto it = cells_.find(k);
  if (it == cells_.end()) throw invalid("no such cell");
  return it->second;
}

const std::vector<Key4>& Triangulation::cells_of_face(const Key3& f) const {
  auto it = faces_.find(f);
  if (it == faces_.end()) throw invalid("no such face");
  return it->second;
}

const std::set<Key4>& Triangulation::star(VertexId v) const {
  auto it = star_.find(v);
  return it == star_.end() ? kNoCells : it->second;
}

bool Triangulation::has_edge(VertexId a, VertexId b) const {
  const VertexId probe = a == INFINITE ? b : a;
  const VertexId other = a == INFINITE ? a : b;
  for (const auto& k : star(probe))
    if (std::find(k.begin(), k.end(), other) != k.end()) return true;
  return false;
}

std::vector<VertexId> Triangulation::vertices() const {
  std::vector<VertexId> out;
  for (const auto& [v, cells] : star_) out.push_back(v);
  return out;
}

VertexId Triangulation::opposite(const Key4& k, const Key3& f) {
  for (VertexId v : k)
    if (std::find(f.begin(), f.end(), v) == f.end()) return v;
  throw invalid("face not in cell");
}

void Triangulation::check_valid() const {
  for (const auto& [f, cs] : faces_) {
    if (cs.size() != 2) throw invalid("face with " + std::to_string(cs.size()) + " cells");
    int sum = 0;
    for (const auto& k : cs) {
      const Cell& c = cells_.at(k);
      const VertexId opp = opposite(k, f);
      const int i = static_cast<int>(std::find(c.begin(), c.end(), opp) - c.begin());
      sum += induced_orientation(c, i);
    }
    if (sum != 0) throw invalid("inconsistent orientation across a face");
  }
}

std::set<Simplex> Triangulation::finite_simplices() const {
  std::set<Simplex> out;
  for (const auto& [k, c] : cells_) {
    const int first = is_finite(k) ? 0 : 1;
    const int m = 4 - first;
    for (int mask = 1; mask < (1 << m); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) < 2) continue;
      Simplex s;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) s.push_back(k[static_cast<std::size_t>(first + i)]);
      out.insert(std::move(s));
    }
  }
  return out;
}

int lifted_sign(const Cell& c, VertexId e, const PointMap& pos) {
  if (e == INFINITE) return orient4(pos.at(c[0]), pos.at(c[1]), pos.at(c[2]), pos.at(c[3]));
  for (int k = 0; k < 4; ++k) {
    if (c[static_cast<std::size_t>(k)] != INFINITE) continue;
    std::array<const Point3*, 4> p;
    for (int i = 0, j = 0; i < 4; ++i)
      if (i != k) p[static_cast<std::size_t>(j++)] = &pos.at(c[static_cast<std::size_t>(i)]);
    p[3] = &pos.at(e);
    const int s = orient4(*p[0], *p[1], *p[2], *p[3]);
    return k % 2 == 0 ? s : -s;
  }
  return lifted_orient(pos.at(c[0]), pos.at(c[1]), pos.at(c[2]), pos.at(c[3]), pos.at(e));
}

Poly lifted_certificate(const Cell& c, VertexId e, const CoordMap& pos) {
  if (e == INFINITE) return orient_poly(pos.at(c[0]), pos.at(c[1]), pos.at(c[2]), pos.at(c[3]));
  for (int k = 0; k < 4; ++k) {
    if (c[static_cast<std::size_t>(k)] != INFINITE) continue;
    std::array<const PolyPoint*, 4> p;
    for (int i = 0, j = 0; i < 4; ++i)
      if (i != k) p[static_cast<std::size_t>(j++)] = &pos.at(c[static_cast<std::size_t>(i)]);
    p[3] = &pos.at(e);
    const Poly s = orient_poly(*p[0], *p[1], *p[2], *p[3]);
    return k % 2 == 0 ? s : -s;
  }
  return lifted_poly(pos.at(c[0]), pos.at(c[1]), pos.at(c[2]), pos.at(c[3]), pos.at(e));
}

StarChange insert_vertex(Triangulation& tri, VertexId v, const PointMap& pos) {
  const Point3& p = pos.at(v);
  if (tri.has_vertex(v)) throw KernelError("DuplicatePoint", "vertex " + std::to_string(v) + " already present");
  for (VertexId u : tri.vertices())
    if (pos.at(u) == p)
      throw KernelError("DuplicatePoint", "vertices " + std::to_string(u) + " and " + std::to_string(v) + " coincide");

  std::set<Key4> conflict;
  for (const auto& [k, c] : tri.cells()) {
    const int s = lifted_sign(c, v, pos);
    if (s == 0)
      throw KernelError("DegenerateInput", "vertex " + std::to_string(v) + " is co-spherical or coplanar with cell");
    if (s < 0) conflict.insert(k);
  }

  StarChange change;
  for (const auto& k : conflict) {
    const Cell& c = tri.cell(k);
    change.removed.push_back(c);
    for (int i = 0; i < 4; ++i) {
      const auto& across = tri.cells_of_face(face_of(c, i));
      const Key4& other = across[0] == k ? across[1] : across[0];
      if (conflict.count(other)) continue;
      Cell n = c;
      n[static_cast<std::size_t>(i)] = v;
      const Key4 nk = key_of(n);
      if (is_finite(nk) && orient4(pos.at(n[0]), pos.at(n[1]), pos.at(n[2]), pos.at(n[3])) <= 0)
        throw KernelError("DegenerateInput", "conflict region of vertex " + std::to_string(v) + " is not star-shaped");
      change.added.push_back(n);
    }
  }
  for (const auto& c : change.removed) tri.remove_cell(key_of(c));
  for (const auto& c : change.added) tri.add_cell(c);
  return change;
}

Triangulation delaunay(const PointMap& pos) {
  std::vector<VertexId> ids;
  for (const auto& [v, p] : pos) ids.push_back(v);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (pos.at(ids[i]) == pos.at(ids[j]))
        throw KernelError("DuplicatePoint",
                          "vertices " + std::to_string(ids[i]) + " and " + std::to_string(ids[j]) + " coincide");

  // First affinely independent quadruple in id order.
  std::vector<VertexId> base;
  for (VertexId v : ids) {
    const Point3& p = pos.at(v);
    bool independent = false;
    switch (base.size()) {
      case 0:
      case 1:
        independent = true;
        break;
      case 2:
        independent = sign(norm2(cross(pos.at(base[1]) - pos.at(base[0]), p - pos.at(base[0])))) != 0;
        break;
      case 3:
        independent = orient4(pos.at(base[0]), pos.at(base[1]), pos.at(base[2]), p) != 0;
        break;
      default:
        break;
    }
    if (independent) base.push_back(v);
    if (base.size() == 4) break;
  }
  if (base.size() < 4) throw KernelError("DegenerateInput", "fewer than four affinely independent points");

  Cell first{base[0], base[1], base[2], base[3]};
  if (orient4(pos.at(first[0]), pos.at(first[1]), pos.at(first[2]), pos.at(first[3])) < 0)
    std::swap(first[0], first[1]);
  Triangulation tri;
  tri.add_cell(first);
  for (int i = 0; i < 4; ++i) {
    Cell c = first;
    c[static_cast<std::size_t>(i)] = INFINITE;
    const int a = i == 0 ? 1 : 0;
    const int b = i == 3 ? 2 : 3;
    std::swap(c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(b)]);
    tri.add_cell(c);
  }
  for (VertexId v : ids)
    if (std::find(base.begin(), base.end(), v) == base.end()) insert_vertex(tri, v, pos);

  for (const auto& [f, cs] : tri.faces()) {
    const Cell& c = tri.cell(cs[0]);
    if (lifted_sign(c, Triangulation::opposite(cs[1], f), pos) == 0)
      throw KernelError("DegenerateInput", "five co-spherical or four coplanar hull points");
  }
  return tri;
}

}  // namespace kinalpha

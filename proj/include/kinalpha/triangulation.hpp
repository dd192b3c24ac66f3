#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "kinalpha/certificates.hpp"

namespace kinalpha {

using VertexId = int;
inline constexpr VertexId INFINITE = -1;

/// Oriented cell. Orientation is that of a 3-sphere: finite cells are
/// positively oriented in space, and a cell keeps its orientation when the
/// vertex at infinity is treated as the lifted point at vertical infinity.
using Cell = std::array<VertexId, 4>;
using Key4 = std::array<VertexId, 4>;  // sorted vertex ids
using Key3 = std::array<VertexId, 3>;  // sorted vertex ids
/// Sorted vertex ids of a finite simplex.
using Simplex = std::vector<VertexId>;

using PointMap = std::map<VertexId, Point3>;
using CoordMap = std::map<VertexId, PolyPoint>;

Key4 key_of(const Cell& c);
/// Sorted ids of c without its i-th vertex.
Key3 face_of(const Cell& c, int i);
bool is_finite(const Key4& k);
bool is_finite(const Key3& k);

class Triangulation {
 public:
  void add_cell(const Cell& c);
  void remove_cell(const Key4& k);
  bool has_cell(const Key4& k) const { return cells_.count(k) != 0; }
  const Cell& cell(const Key4& k) const;
  const std::map<Key4, Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  /// The (normally two) cells containing the face.
  const std::vector<Key4>& cells_of_face(const Key3& f) const;
  bool has_face(const Key3& f) const { return faces_.count(f) != 0; }
  const std::map<Key3, std::vector<Key4>>& faces() const { return faces_; }
  /// Cells incident to v; empty set for unknown v.
  const std::set<Key4>& star(VertexId v) const;
  bool has_vertex(VertexId v) const { return star_.count(v) != 0; }
  bool has_edge(VertexId a, VertexId b) const;
  /// Finite vertex ids.
  std::vector<VertexId> vertices() const;
  /// Vertex of cell k not in face f.
  static VertexId opposite(const Key4& k, const Key3& f);

  /// Every face in exactly two cells with opposite induced orientations.
  /// Throws "InvalidTriangulation".
  void check_valid() const;

  /// All finite edges, triangles and tetrahedra.
  std::set<Simplex> finite_simplices() const;

 private:
  std::map<Key4, Cell> cells_;
  std::map<Key3, std::vector<Key4>> faces_;
  std::map<VertexId, std::set<Key4>> star_;
};

/// Negative iff e is strictly inside the circumsphere of c (strictly beyond
/// the hull facet when c is infinite). e may be INFINITE for finite c.
int lifted_sign(const Cell& c, VertexId e, const PointMap& pos);
Poly lifted_certificate(const Cell& c, VertexId e, const CoordMap& pos);

struct StarChange {
  std::vector<Cell> removed;
  std::vector<Cell> added;
};

/// Bowyer-Watson insertion of v at pos.at(v). Throws "DuplicatePoint" when v
/// coincides with a vertex and "DegenerateInput" when v is co-spherical with
/// a cell or coplanar with a hull facet.
StarChange insert_vertex(Triangulation& tri, VertexId v, const PointMap& pos);

/// Exact Delaunay triangulation, inserting in increasing id order. At least
/// four affinely independent points are required.
Triangulation delaunay(const PointMap& pos);

}  // namespace kinalpha

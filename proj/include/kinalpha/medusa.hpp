#pragma once

#include <map>
#include <set>
#include <vector>

#include "kinalpha/kinetic_alpha.hpp"

namespace kinalpha {

/// INITIAL: born at the start and closed before the end. RADIUS: born at a
/// later event and closed before the end. FINAL: still alive at the end.
/// Fill cells have zero-length lifetimes.
enum class Origin { Initial, Radius, FlipFill, InsertFill, DeleteFill, Final };
const char* to_string(Origin o);

struct MedusaCell {
  Simplex ids;
  AlgebraicReal birth;
  AlgebraicReal death;
  Origin origin = Origin::Initial;

  std::size_t dimension() const { return ids.size() - 1; }
};

class MedusaBuilder {
 public:
  struct Active {
    AlgebraicReal birth;
    bool initial = false;
  };

  /// Opens every vertex and every in-alpha simplex at t.
  void start(const std::vector<VertexId>& vertices, const std::set<Simplex>& complex, const AlgebraicReal& t);

  void on_alpha_add(const Simplex& s, const AlgebraicReal& t);
  /// Throws "InvariantViolation" if s is not active.
  void on_alpha_remove(const Simplex& s, const AlgebraicReal& t);

  void on_radius(const AlphaDelta& d, const AlgebraicReal& t);
  void on_flip(const FlipResult& f, const AlphaDelta& d, const AlgebraicReal& t);
  void on_insert(VertexId u, const AlphaDelta& d, const AlgebraicReal& t);
  void on_delete(VertexId v, const AlphaDelta& d, const AlgebraicReal& t);
  /// Closes every active cell at t and sorts the output by (birth, ids).
  void finalize(const AlgebraicReal& t);

  const std::map<Simplex, Active>& active() const { return active_; }
  const std::vector<MedusaCell>& output() const { return output_; }
  std::set<Simplex> active_simplices() const;

 private:
  void close(const Simplex& s, const AlgebraicReal& t, bool final);
  void fill(Simplex ids, const AlgebraicReal& t, Origin origin);
  void apply(const AlphaDelta& d, const AlgebraicReal& t);

  std::map<Simplex, Active> active_;
  std::vector<MedusaCell> output_;
};

/// Structural checks on a finished medusa. Throws "InvariantViolation".
/// Lifetimes are ordered, fill cells are instants, FLIP_FILL cells have five
/// vertices, and copies of one vertex set have pairwise disjoint lifetimes.
void check_medusa(const std::vector<MedusaCell>& cells);

}  // namespace kinalpha

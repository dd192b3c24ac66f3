#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "kinalpha/algebraic.hpp"
#include "kinalpha/triangulation.hpp"

namespace kinalpha {

/// Declaration order is the processing order among events at equal times.
enum class EventKind { Bending, Delete, Insert, Flip, Radius };
const char* to_string(EventKind k);

struct Event {
  AlgebraicReal time;
  EventKind kind = EventKind::Flip;
  /// Face ids (flip), simplex ids (radius) or a single vertex id.
  std::vector<VertexId> key;
  std::uint64_t token = 0;
};

class EventQueue {
 public:
  void push(Event e) { heap_.push(std::move(e)); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const Event& top() const { return heap_.top(); }
  Event pop();

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const;
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
};

/// Root finding shared by flip and radius certificates.
class CertificateScheduler {
 public:
  explicit CertificateScheduler(KernelConfig config = {}) : config_(config) {}

  const KernelConfig& config() const { return config_; }
  KernelStats& stats() { return stats_; }
  const KernelStats& stats() const { return stats_; }
  RootCache& cache() { return cache_; }
  std::uint64_t next_token() { return ++token_; }

  /// Earliest time >= now right after which sign(cert) differs from `state`
  /// (+1 or -1). Roots after now are searched in (lo, hi]; lo <= now.
  /// With `abort_tangential`, a root that keeps the sign throws "TangentialRoot".
  std::optional<AlgebraicReal> next_change(const Poly& cert, int state, const AlgebraicReal& now, const Rational& lo,
                                           const Rational& hi, bool abort_tangential);

 private:
  KernelConfig config_;
  KernelStats stats_;
  RootCache cache_;
  std::uint64_t token_ = 0;
};

struct FlipCertificate {
  Poly poly;
  std::uint64_t token = 0;
  std::optional<AlgebraicReal> time;
};

struct FlipResult {
  StarChange change;
  Simplex five;  // sorted ids of the flipped configuration, INFINITE first if present
  bool two_three = true;
};

std::string describe(const std::vector<VertexId>& ids);

class KineticDelaunay {
 public:
  KineticDelaunay(EventQueue& queue, CertificateScheduler& scheduler) : queue_(queue), sched_(scheduler) {}

  /// Delaunay triangulation of the motions' positions at t, plus one flip
  /// certificate per triangle.
  void initialize(const std::map<VertexId, LinearMotion>& motions, const Rational& t);

  const Triangulation& triangulation() const { return tri_; }
  const std::map<VertexId, LinearMotion>& motions() const { return motions_; }
  const CoordMap& coords() const { return coords_; }
  PointMap positions(const Rational& t) const;
  /// (max t_lo, min t_hi) over the finite vertices.
  std::pair<Rational, Rational> validity(const std::vector<VertexId>& ids) const;

  const std::map<Key3, FlipCertificate>& certificates() const { return certs_; }
  bool is_current(const Event& e) const;
  std::uint64_t certificates_built() const { return built_; }

  /// Performs the 2-3 or 3-2 flip announced by e. Throws "UnflippableEvent".
  FlipResult handle_flip(const Event& e);
  /// Replaces motions and rebuilds the certificates of every face of a cell
  /// incident to a bent vertex. Returns the number rebuilt.
  std::size_t handle_bending(const std::vector<std::pair<VertexId, LinearMotion>>& bends, const AlgebraicReal& now);
  StarChange insert_point(VertexId v, const LinearMotion& m, const Rational& t);
  /// Throws "NoSuchVertex".
  StarChange delete_point(VertexId v, const Rational& t);

 private:
  void rebuild_face(const Key3& f, const AlgebraicReal& now);
  void apply(const StarChange& change, const AlgebraicReal& now);
  Poly face_certificate(const Key3& f) const;

  EventQueue& queue_;
  CertificateScheduler& sched_;
  std::map<VertexId, LinearMotion> motions_;
  CoordMap coords_;
  Triangulation tri_;
  std::map<Key3, FlipCertificate> certs_;
  std::uint64_t built_ = 0;
};

}  // namespace kinalpha

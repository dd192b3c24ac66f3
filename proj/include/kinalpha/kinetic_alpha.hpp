#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "kinalpha/kinetic_delaunay.hpp"

namespace kinalpha {

struct AlphaConfig {
  Rational alpha_sq = 1;
  bool prune_certificates = true;  // no radius certificate where shortness is implied
  bool degree6_triangle = true;    // triangle radius via side lengths, else circumcenter form
  bool descartes_filter = true;
  bool root_cache = true;

  KernelConfig kernel() const { return KernelConfig{descartes_filter, root_cache}; }
};

struct EventCounters {
  std::uint64_t flips = 0;
  std::uint64_t radius_events = 0;
  std::uint64_t bending_events = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t certificates_built = 0;  // radius certificates
  std::uint64_t certificates_filtered = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t flip_certificates_built = 0;
  std::uint64_t root_isolations = 0;
  std::uint64_t certificates_without_roots = 0;
};

struct SimplexState {
  bool is_short = false;
  bool in_alpha = false;
  bool has_radius_certificate = false;
};

struct RadiusCertificate {
  Poly poly;
  std::uint64_t token = 0;
  std::optional<AlgebraicReal> time;
};

/// Simplices entering and leaving the alpha complex at one event.
struct AlphaDelta {
  std::vector<Simplex> added;
  std::vector<Simplex> removed;
  /// Flips only: the new tetrahedra are finite and short.
  bool all_short = false;
};

class KineticAlpha {
 public:
  KineticAlpha(const KineticDelaunay& kd, EventQueue& queue, CertificateScheduler& scheduler, AlphaConfig config)
      : kd_(kd), queue_(queue), sched_(scheduler), config_(std::move(config)) {}

  const AlphaConfig& config() const { return config_; }

  /// Static Short&Gabriel classification of the current triangulation at t.
  void classify_initial(const Rational& t);
  void install_radius_certificates(const AlgebraicReal& now);

  const std::map<Simplex, SimplexState>& state() const { return state_; }
  const std::map<Simplex, RadiusCertificate>& certificates() const { return certs_; }
  /// In-alpha edges, triangles and tetrahedra.
  std::set<Simplex> complex() const;
  std::uint64_t certificates_built() const { return built_; }

  bool is_current(const Event& e) const;
  AlphaDelta handle_radius_event(const Event& e);
  /// Flags after a flip, insertion or deletion already applied to the
  /// triangulation. With `flip`, a new tetrahedron whose radius equals alpha
  /// at `now` throws "SimultaneousEvents".
  AlphaDelta handle_topology_change(const StarChange& change, const AlgebraicReal& now, bool flip);
  /// Rebuilds the radius certificates of simplices with a bent vertex.
  std::size_t handle_bending(const std::vector<VertexId>& bent, const AlgebraicReal& now);

  /// Proper cofaces present in the triangulation, finite only.
  std::set<Simplex> cofaces(const Simplex& s) const;
  /// Finite vertices of cells containing s, not in s.
  std::set<VertexId> link_vertices(const Simplex& s) const;

 private:
  std::vector<PolyPoint> points(const Simplex& s) const;
  Poly radius(const Simplex& s) const;
  bool needs_certificate(const Simplex& s) const;
  void install(const Simplex& s, const AlgebraicReal& now);
  void update_certificates(const std::set<Simplex>& affected, const AlgebraicReal& now);
  bool gabriel_after(const Simplex& s, const AlgebraicReal& now) const;
  void recompute(const std::set<Simplex>& affected, const AlgebraicReal& now, std::map<Simplex, bool>& before);

  const KineticDelaunay& kd_;
  EventQueue& queue_;
  CertificateScheduler& sched_;
  AlphaConfig config_;
  std::map<Simplex, SimplexState> state_;
  std::map<Simplex, RadiusCertificate> certs_;
  std::uint64_t built_ = 0;
};

/// Every non-empty proper subset of s with at least two vertices.
std::vector<Simplex> proper_faces(const Simplex& s);

}  // namespace kinalpha

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kinalpha/medusa.hpp"
#include "kinalpha/trajectories.hpp"

namespace kinalpha {

/// Kinetic state exposed at a probe time, with every event before it processed.
struct ProbeView {
  const Rational& time;
  const KineticDelaunay& delaunay;
  const KineticAlpha& alpha;
  const MedusaBuilder& medusa;
};

struct RunOptions {
  AlphaConfig alpha;
  /// Random rational probe times checked against a from-scratch rebuild.
  int probes = 0;
  std::uint64_t seed = 1;
  /// Verify closure and the active-list invariant after every event.
  bool check_invariants = true;
  /// Called at every probe time, after the built-in check.
  std::function<void(const ProbeView&)> probe_hook;
};

struct ProcessedEvent {
  AlgebraicReal time;
  EventKind kind;
  std::vector<VertexId> key;
};

struct RunResult {
  std::vector<MedusaCell> medusa;
  EventCounters counters;
  std::vector<ProcessedEvent> events;
  std::size_t probes_checked = 0;
  std::size_t probes_skipped = 0;  // probe time equal to an event time
  std::vector<std::string> mismatches;
  double seconds_setup = 0;
  double seconds_events = 0;
  double seconds_probes = 0;
};

/// Runs the full pipeline from t = 0 to t = 1. Errors surface as KernelError
/// ("SimultaneousEvents", "DegenerateInput", "InvariantViolation", ...).
RunResult run_simulation(const TrajectoryFile& file, const RunOptions& options);

/// Short&Gabriel classification of a static triangulation, Gabriel against all points.
std::set<Simplex> static_alpha_complex(const Triangulation& tri, const PointMap& pos, const Rational& alpha_sq);

/// Differences between the kinetic state and a rebuild at t; empty if equal.
std::vector<std::string> compare_with_rebuild(const ProbeView& view);

/// Exact "p/q", or "root(c0,c1,...;lo,hi)~decimal" for irrational times.
std::string format_time(const AlgebraicReal& t, int digits = 12);
void write_medusa(std::ostream& out, const std::vector<MedusaCell>& cells, int digits = 12);
/// Deterministic counters; wall-clock lines only with `timings`.
void write_stats(std::ostream& out, const RunResult& r, bool timings = false);

}  // namespace kinalpha

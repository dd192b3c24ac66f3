#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kinalpha/geometry.hpp"
#include "kinalpha/triangulation.hpp"

namespace kinalpha {

/// Piecewise-linear path over [a, b], with one breakpoint position for every
/// global time in [a, b]. Both a and b must be global times.
struct Trajectory {
  VertexId id = 0;
  Rational a = 0;
  Rational b = 1;
  std::vector<Point3> positions;
};

struct TrajectoryFile {
  /// Increasing global breakpoint times, from 0 to 1.
  std::vector<Rational> times;
  std::vector<Trajectory> trajectories;

  /// Index of a global time. Throws "InvalidInput" if absent.
  std::size_t time_index(const Rational& t) const;
  /// Segment of a trajectory that starts at global time index k.
  LinearMotion segment(const Trajectory& tr, std::size_t k) const;
};

/// Text format:
///   kinalpha-trajectories 1
///   times <k> <t_0> ... <t_{k-1}>
///   trajectories <n>
///   trajectory <id> <a> <b>
///   <x> <y> <z>            one line per global time in [a, b]
/// Numbers are integers or p/q. '#' starts a comment. Throws "ParseError".
TrajectoryFile parse_trajectories(std::istream& in);
void write_trajectories(std::ostream& out, const TrajectoryFile& f);

/// Structural checks plus pairwise non-coincidence of trajectories.
/// Throws "InvalidInput" or "DuplicatePoint".
void validate(const TrajectoryFile& f);

struct GeneratorParams {
  std::uint64_t seed = 1;
  int trajectories = 8;
  int bends = 2;
  int box = 10;
  bool two_type_sorting = false;
  /// Trajectories with domains shorter than [0, 1]; the first four always span it.
  int churn = 0;
};

/// Jittered cubic grid start, random steps on a uniform rhythm of `bends`
/// interior times. Coordinates are multiples of 1/1009. With two-type
/// sorting, even ids drift away from the centre and odd ids toward it.
TrajectoryFile generate(const GeneratorParams& p);

}  // namespace kinalpha

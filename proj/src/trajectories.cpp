#include "kinalpha/trajectories.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace kinalpha {

namespace {

KernelError invalid(const std::string& what) { return KernelError("InvalidInput", what); }

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) toks_.emplace_back(tok, line_no_);
    }
  }

  bool done() const { return pos_ >= toks_.size(); }

  std::string word() {
    if (done()) throw KernelError("ParseError", "unexpected end of input");
    return toks_[pos_++].first;
  }

  void expect(const std::string& w) {
    const int line = here();
    const std::string got = word();
    if (got != w) throw KernelError("ParseError", "line " + std::to_string(line) + ": expected '" + w + "', got '" + got + "'");
  }

  Rational number() {
    const int line = here();
    try {
      return parse_rational(word());
    } catch (const KernelError& e) {
      throw KernelError("ParseError", "line " + std::to_string(line) + ": " + e.what());
    }
  }

  long integer() {
    const int line = here();
    const Rational q = number();
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
      throw KernelError("ParseError", "line " + std::to_string(line) + ": expected an integer");
    return q.get_num().get_si();
  }

 private:
  int here() const { return done() ? line_no_ : toks_[pos_].second; }

  std::vector<std::pair<std::string, int>> toks_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

std::size_t count_in(const std::vector<Rational>& times, const Rational& a, const Rational& b) {
  return static_cast<std::size_t>(std::count_if(times.begin(), times.end(),
                                                [&](const Rational& t) { return a <= t && t <= b; }));
}

Rational frac(long p, long q) {
  Rational out(p, q);
  out.canonicalize();
  return out;
}

Rational round_to_grid(const Rational& x, long den) {
  Rational scaled = x * den + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  Rational out(f, den);
  out.canonicalize();
  return out;
}

}  // namespace

std::size_t TrajectoryFile::time_index(const Rational& t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || *it != t) throw invalid("time " + to_string(t) + " is not a global breakpoint time");
  return static_cast<std::size_t>(it - times.begin());
}

LinearMotion TrajectoryFile::segment(const Trajectory& tr, std::size_t k) const {
  const std::size_t first = time_index(tr.a);
  const std::size_t i = k - first;
  return LinearMotion{tr.positions.at(i), tr.positions.at(i + 1), times.at(k), times.at(k + 1)};
}

TrajectoryFile parse_trajectories(std::istream& in) {
  Tokens tk(in);
  TrajectoryFile f;
  tk.expect("kinalpha-trajectories");
  if (tk.integer() != 1) throw KernelError("ParseError", "unsupported format version");
  tk.expect("times");
  const long k = tk.integer();
  if (k < 2) throw KernelError("ParseError", "at least two global times are required");
  for (long i = 0; i < k; ++i) f.times.push_back(tk.number());
  tk.expect("trajectories");
  const long n = tk.integer();
  if (n < 0) throw KernelError("ParseError", "negative trajectory count");
  for (long j = 0; j < n; ++j) {
    tk.expect("trajectory");
    Trajectory tr;
    tr.id = static_cast<VertexId>(tk.integer());
    tr.a = tk.number();
    tr.b = tk.number();
    const std::size_t m = count_in(f.times, tr.a, tr.b);
    for (std::size_t i = 0; i < m; ++i) {
      Point3 p;
      for (auto& x : p) x = tk.number();
      tr.positions.push_back(p);
    }
    f.trajectories.push_back(std::move(tr));
  }
  if (!tk.done()) throw KernelError("ParseError", "trailing content after the last trajectory");
  return f;
}

void write_trajectories(std::ostream& out, const TrajectoryFile& f) {
  out << "kinalpha-trajectories 1\n";
  out << "times " << f.times.size();
  for (const auto& t : f.times) out << ' ' << to_string(t);
  out << "\ntrajectories " << f.trajectories.size() << '\n';
  for (const auto& tr : f.trajectories) {
    out << "trajectory " << tr.id << ' ' << to_string(tr.a) << ' ' << to_string(tr.b) << '\n';
    for (const auto& p : tr.positions) out << to_string(p[0]) << ' ' << to_string(p[1]) << ' ' << to_string(p[2]) << '\n';
  }
}

void validate(const TrajectoryFile& f) {
  const auto& t = f.times;
  if (t.size() < 2 || t.front() != 0 || t.back() != 1) throw invalid("global times must start at 0 and end at 1");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i - 1] < t[i])) throw invalid("global times must be strictly increasing");
  std::set<VertexId> ids;
  for (const auto& tr : f.trajectories) {
    const std::string name = "trajectory " + std::to_string(tr.id);
    if (tr.id < 0) throw invalid(name + ": ids must be non-negative");
    if (!ids.insert(tr.id).second) throw invalid(name + ": duplicate id");
    if (!(0 <= tr.a && tr.a < tr.b && tr.b <= 1)) throw invalid(name + ": domain must satisfy 0 <= a < b <= 1");
    f.time_index(tr.a);
    f.time_index(tr.b);
    if (tr.positions.size() != count_in(t, tr.a, tr.b)) throw invalid(name + ": wrong number of positions");
  }
  // Pairwise coincidence on every shared segment.
  const auto& trs = f.trajectories;
  for (std::size_t i = 0; i < trs.size(); ++i)
    for (std::size_t j = i + 1; j < trs.size(); ++j) {
      const Rational lo = std::max(trs[i].a, trs[j].a), hi = std::min(trs[i].b, trs[j].b);
      if (!(lo < hi)) continue;
      for (std::size_t k = f.time_index(lo); k < f.time_index(hi); ++k) {
        const LinearMotion p = f.segment(trs[i], k), q = f.segment(trs[j], k);
        const Point3 d0 = p.start - q.start, d1 = p.end - q.end;
        // d(s) = d0 + s (d1 - d0) for s in [0, 1].
        std::optional<Rational> s;
        bool possible = true;
        for (int c = 0; c < 3 && possible; ++c) {
          const Rational slope = d1[c] - d0[c];
          if (slope == 0) {
            possible = d0[c] == 0;
          } else {
            const Rational r = -d0[c] / slope;
            if (s && *s != r) possible = false;
            s = r;
          }
        }
        if (possible && s && (*s < 0 || *s > 1)) possible = false;
        if (possible) {
          const Rational when = s ? t[k] + *s * (t[k + 1] - t[k]) : t[k];
          throw KernelError("DuplicatePoint", "trajectories " + std::to_string(trs[i].id) + " and " +
                                                  std::to_string(trs[j].id) + " coincide at t = " + to_string(when));
        }
      }
    }
}

TrajectoryFile generate(const GeneratorParams& p) {
  constexpr long kGrid = 1009;
  if (p.trajectories < 1) throw invalid("the generator needs at least one trajectory");
  if (p.bends < 0 || p.box < 1) throw invalid("the generator needs bends >= 0 and box >= 1");
  std::mt19937_64 rng(p.seed);
  auto unit = [&] {  // uniform in [-1/2, 1/2] on a 1/1009 grid
    return frac(static_cast<long>(rng() % kGrid) - kGrid / 2, kGrid);
  };

  TrajectoryFile f;
  const int k = p.bends + 1;
  for (int i = 0; i <= k; ++i) {
    f.times.push_back(frac(i, k));
  }

  int m = 1;
  while (m * m * m < p.trajectories) ++m;
  const Rational spacing = frac(p.box, m);
  const Rational half = frac(p.box, 2);
  const Rational drift = frac(1, 2 * k);
  for (int i = 0; i < p.trajectories; ++i) {
    const int idx[3] = {i % m, (i / m) % m, i / (m * m)};
    Point3 pos;
    for (int c = 0; c < 3; ++c)
      pos[c] = round_to_grid((Rational(idx[c]) + Rational(1, 2) + Rational(3, 5) * unit()) * spacing, kGrid);
    Trajectory tr;
    tr.id = i;
    tr.positions.push_back(pos);
    for (int s = 0; s < k; ++s) {
      for (int c = 0; c < 3; ++c) {
        Rational x = pos[c] + Rational(6, 5) * unit() * spacing;
        if (p.two_type_sorting) x += (i % 2 == 0 ? drift : -drift) * (pos[c] - half);
        pos[c] = round_to_grid(x, kGrid);
      }
      tr.positions.push_back(pos);
    }
    f.trajectories.push_back(std::move(tr));
  }

  const int churn = std::min(p.churn, p.trajectories - 4);
  for (int j = 0; j < churn && k >= 2; ++j) {
    Trajectory& tr = f.trajectories[static_cast<std::size_t>(p.trajectories - 1 - j)];
    std::size_t ia = rng() % static_cast<std::size_t>(k);
    std::size_t ib = ia + 1 + rng() % static_cast<std::size_t>(k - ia);
    if (ia == 0 && ib == static_cast<std::size_t>(k)) {
      if (rng() % 2) ia = 1;
      else ib = static_cast<std::size_t>(k - 1);
    }
    tr.a = f.times[ia];
    tr.b = f.times[ib];
    tr.positions = std::vector<Point3>(tr.positions.begin() + static_cast<long>(ia),
                                       tr.positions.begin() + static_cast<long>(ib) + 1);
  }
  return f;
}

}  // namespace kinalpha

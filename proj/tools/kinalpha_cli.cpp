#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kinalpha/simulation.hpp"

using namespace kinalpha;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kDegenerate = 3, kInvariant = 4, kInternal = 5 };

GeneratorParams parse_generate(const std::string& spec, std::uint64_t seed) {
  std::vector<long> v;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw KernelError("ParseError", "--generate expects integers n,bends,box,sorting[,churn]");
    }
  }
  if (v.size() < 4 || v.size() > 5) throw KernelError("ParseError", "--generate expects n,bends,box,sorting[,churn]");
  GeneratorParams p;
  p.seed = seed;
  p.trajectories = static_cast<int>(v[0]);
  p.bends = static_cast<int>(v[1]);
  p.box = static_cast<int>(v[2]);
  p.two_type_sorting = v[3] != 0;
  if (v.size() == 5) p.churn = static_cast<int>(v[4]);
  return p;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw KernelError("IOError", "cannot open " + path + " for writing");
  body(out);
  if (!out) throw KernelError("IOError", "failed writing " + path);
}

int exit_code(const std::string& code) {
  if (code == "IOError" || code == "ParseError" || code == "InvalidInput") return kIo;
  if (code == "InvariantViolation" || code == "ProbeMismatch") return kInvariant;
  return kDegenerate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic 3D alpha complex and alpha medusa of moving points"};
  std::string input, output, stats, gen_spec, save_input, alpha_text = "1";
  RunOptions opt;
  bool no_prune = false, deg10 = false, no_filter = false, no_cache = false, timings = false;
  int digits = 12;
  app.add_option("--input", input, "Trajectory file");
  app.add_option("--generate", gen_spec, "Synthetic input n,bends,box,sorting[,churn] instead of --input");
  app.add_option("--save-input", save_input, "Write the generated trajectory file");
  app.add_option("--alpha-sq", alpha_text, "Squared radius alpha0^2 as p/q")->capture_default_str();
  app.add_option("--output", output, "Medusa output file, '-' for stdout");
  app.add_option("--stats", stats, "Stats output file, '-' for stdout");
  app.add_flag("--no-prune", no_prune, "Certify every finite simplex");
  app.add_flag("--deg10-triangle", deg10, "Degree-10 circumcenter form of the triangle certificate");
  app.add_flag("--no-filter", no_filter, "Disable the Descartes fast path");
  app.add_flag("--no-cache", no_cache, "Disable the root cache");
  app.add_option("--probes", opt.probes, "Random probe times checked against a full rebuild")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "Seed for the generator and probe times")->capture_default_str();
  app.add_option("--digits", digits, "Significant digits of decimal approximations")->capture_default_str();
  app.add_flag("--timings", timings, "Append wall-clock timings to the stats");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (input.empty() == gen_spec.empty()) {
    std::cerr << "error: give exactly one of --input or --generate\n";
    return kUsage;
  }

  try {
    opt.alpha.alpha_sq = parse_rational(alpha_text);
    opt.alpha.prune_certificates = !no_prune;
    opt.alpha.degree6_triangle = !deg10;
    opt.alpha.descartes_filter = !no_filter;
    opt.alpha.root_cache = !no_cache;

    TrajectoryFile file;
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw KernelError("IOError", "cannot open " + input);
      file = parse_trajectories(in);
    } else {
      file = generate(parse_generate(gen_spec, opt.seed));
    }
    if (!save_input.empty()) write_file(save_input, [&](std::ostream& o) { write_trajectories(o, file); });

    const RunResult r = run_simulation(file, opt);
    if (!output.empty()) write_file(output, [&](std::ostream& o) { write_medusa(o, r.medusa, digits); });
    if (!stats.empty()) write_file(stats, [&](std::ostream& o) { write_stats(o, r, timings); });
    for (const auto& m : r.mismatches) std::cerr << "probe mismatch: " << m << '\n';
    if (!r.mismatches.empty()) return kInvariant;
    return kOk;
  } catch (const KernelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

// polyproj: exact projection and convex hull of rational polyhedra through
// parametric linear programming, plus the supporting oracle/bench commands.
//
// stdout carries only machine-readable results in the polyhedron text format;
// everything else goes to stderr. Exit codes: 0 success, 1 usage or input
// error, 2 empty input polyhedron, 3 internal consistency failure.

#include <CLI11.hpp>

#include "plp/engine.hpp"
#include "plp/oracle.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "polyproj 1.0.0 (polyhedron text format v1)";

struct CliError : std::runtime_error {
  int code;
  explicit CliError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

plp::Polyhedron load_polyhedron(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(1, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return plp::parse_polyhedron(buf.str());
  } catch (const std::exception& e) {
    throw CliError(1, path + ": " + e.what());
  }
}

// 1-indexed comma list like "2,4" to ascending 0-indexed set
std::vector<std::size_t> parse_eliminate(const std::string& spec, std::size_t dim) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || v < 1 || static_cast<std::size_t>(v) > dim)
      throw CliError(1, "--eliminate: '" + tok + "' is not a variable index in 1.." +
                            std::to_string(dim));
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw CliError(1, "--eliminate: no variables given");
  return out;
}

void require_nonempty(const plp::Polyhedron& p, const std::string& name) {
  // Farkas: the closed system is infeasible iff 0 >= 1 is a combination of it
  plp::Constraint absurd(plp::RatVec(p.dimension(), plp::Rational(0)), plp::Rational(-1));
  if (p.contradiction() || plp::farkas_combination(absurd, p.rows()))
    throw CliError(2, name + ": input polyhedron is empty");
}

void dump_regions(const std::string& path, const plp::SolveResult& res) {
  std::ofstream out(path);
  if (!out) throw CliError(1, "cannot write '" + path + "'");
  // group id = index of the region's optimal function (its degeneracy group)
  for (std::size_t i = 0; i < res.regions.size(); ++i) {
    const plp::Region& r = res.regions[i];
    std::size_t group = res.functions.size();
    for (std::size_t g = 0; g < res.functions.size(); ++g)
      if (res.functions[g] == r.zstar) group = g;
    out << "# region " << i << " group " << group << " basis";
    for (std::size_t c : r.basis) out << ' ' << c;
    out << '\n';
    std::size_t dim = r.zstar.size() - 1;
    out << dim << ' ' << r.rows.size() << '\n';
    for (const auto& row : r.rows) {
      for (const auto& a : row.coeffs) out << plp::rat_to_string(a) << ' ';
      out << plp::rat_to_string(row.constant) << '\n';
    }
    out << "# optimal";
    for (const auto& v : r.zstar) out << ' ' << plp::rat_to_string(v);
    out << '\n';
  }
}

// hull has no elimination oracle; the exact check is that every output row is
// a consequence of each input separately (so the hull contains both)
bool hull_sound(const plp::Polyhedron& hull, const plp::Polyhedron& a,
                const plp::Polyhedron& b) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (!plp::farkas_combination(hull.row(i), a.rows())) return false;
    if (!plp::farkas_combination(hull.row(i), b.rows())) return false;
  }
  return true;
}

struct CommonOpts {
  std::uint64_t seed = 0;
  std::size_t initial_points = 1;
  bool audit = false;
  double threshold = plp::kFloatTolerance;
};

plp::EngineConfig engine_config(const CommonOpts& c) {
  plp::EngineConfig cfg;
  cfg.seed = c.seed;
  cfg.initial_points = c.initial_points;
  cfg.audit = c.audit;
  cfg.tolerance = c.threshold;
  cfg.log = &std::cerr;
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"exact polyhedral projection and convex hull via parametric LP"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // parent options may appear after the subcommand name
  int threads = 1;
  app.add_option("--threads", threads, "reserved; the solver runs single-threaded")
      ->group("");
  std::string output_path;
  app.add_option("--output", output_path, "write results to a file instead of stdout");

  CommonOpts opts;

  auto* project = app.add_subcommand("project", "project a polyhedron onto kept variables");
  std::string in_path, eliminate_spec, dump_path;
  bool check_oracle = false;
  project->add_option("--input", in_path, "polyhedron file")->required();
  project->add_option("--eliminate", eliminate_spec,
                      "comma-separated 1-indexed variables to eliminate")
      ->required();
  project->add_option("--initial-points", opts.initial_points,
                      "extra random task points to seed the solver");
  project->add_option("--seed", opts.seed, "seed for all randomized choices");
  project->add_option("--threshold", opts.threshold, "float-stage feasibility threshold");
  project->add_flag("--audit", opts.audit, "re-verify every frontier witness while solving");
  project->add_flag("--check-oracle", check_oracle,
                    "verify the result against exact Fourier-Motzkin elimination");
  project->add_option("--dump-regions", dump_path, "write per-region blocks to a file");

  auto* hull = app.add_subcommand("hull", "convex hull of two polyhedra");
  std::string a_path, b_path;
  hull->add_option("--a", a_path, "first polyhedron file")->required();
  hull->add_option("--b", b_path, "second polyhedron file")->required();
  hull->add_option("--seed", opts.seed, "seed for all randomized choices");
  hull->add_option("--threshold", opts.threshold, "float-stage feasibility threshold");
  hull->add_flag("--audit", opts.audit, "re-verify every frontier witness while solving");
  hull->add_flag("--check-oracle", check_oracle,
                 "verify that the hull contains both inputs (exact Farkas check)");
  hull->add_option("--dump-regions", dump_path, "write per-region blocks to a file");

  auto* minimize = app.add_subcommand("minimize", "remove redundant constraints");
  std::string min_path;
  minimize->add_option("file", min_path, "polyhedron file")->required();
  minimize->add_option("--threshold", opts.threshold, "float-stage feasibility threshold");

  auto* bench = app.add_subcommand("bench", "time projection on random instances");
  plp::GeneratorParams gp;
  std::size_t instances = 10, repeats = 5;
  bool bench_oracle = false;
  bench->add_option("--cn", gp.constraint_count, "constraints per instance");
  bench->add_option("--vn", gp.variable_count, "variables per instance");
  bench->add_option("--pr", gp.projection_ratio, "fraction of variables eliminated");
  bench->add_option("--d", gp.density, "probability of a zero coefficient");
  bench->add_option("--instances", instances, "instances per round");
  bench->add_option("--repeats", repeats, "rounds per configuration");
  bench->add_option("--seed", gp.seed, "base seed; instance i uses seed+i");
  bench->add_flag("--oracle", bench_oracle, "check each result against Fourier-Motzkin");

  auto* gen = app.add_subcommand("gen", "emit a random instance in the text format");
  plp::GeneratorParams gen_p;
  gen->add_option("--cn", gen_p.constraint_count, "constraint count");
  gen->add_option("--vn", gen_p.variable_count, "variable count");
  gen->add_option("--d", gen_p.density, "probability of a zero coefficient");
  gen->add_option("--seed", gen_p.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version exit 0, every other parse failure is a usage error
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!output_path.empty()) {
    out_file.open(output_path);
    if (!out_file) throw CliError(1, "cannot write '" + output_path + "'");
    out = &out_file;
  }

  if (*project) {
    plp::Polyhedron input = load_polyhedron(in_path);
    require_nonempty(input, in_path);
    std::vector<std::size_t> elim = parse_eliminate(eliminate_spec, input.dimension());
    plp::SolveResult res = plp::project_solve(input, elim, engine_config(opts));
    if (check_oracle) {
      try {
        plp::Polyhedron oracle = plp::fourier_motzkin(input, elim);
        plp::EqualityVerdict v = plp::poly_equal(res.polyhedron, oracle);
        if (!v.equal) throw plp::InternalError("result differs from the elimination oracle");
        std::cerr << "oracle: exact elimination agrees\n";
      } catch (const std::runtime_error& e) {
        std::cerr << "oracle skipped: " << e.what() << "\n";
      }
    }
    if (!dump_path.empty()) dump_regions(dump_path, res);
    std::cerr << "regions " << res.regions.size() << " tasks " << res.stats.tasks
              << " float_solves " << res.stats.float_solves << " rational_solves "
              << res.stats.rational_solves << "\n";
    plp::print_polyhedron(*out, res.polyhedron);
    return 0;
  }

  if (*hull) {
    plp::Polyhedron a = load_polyhedron(a_path);
    plp::Polyhedron b = load_polyhedron(b_path);
    require_nonempty(a, a_path);
    require_nonempty(b, b_path);
    plp::SolveResult res = plp::hull_solve(a, b, engine_config(opts));
    if (check_oracle) {
      if (!hull_sound(res.polyhedron, a, b))
        throw plp::InternalError("hull does not contain both inputs");
      std::cerr << "oracle: hull contains both inputs\n";
    }
    if (!dump_path.empty()) dump_regions(dump_path, res);
    std::cerr << "regions " << res.regions.size() << " tasks " << res.stats.tasks << "\n";
    plp::print_polyhedron(*out, res.polyhedron);
    return 0;
  }

  if (*minimize) {
    plp::Polyhedron input = load_polyhedron(min_path);
    require_nonempty(input, min_path);
    plp::MinimizationResult mr =
        plp::minimize_hybrid(input.rows(), input.dimension(), std::nullopt, opts.threshold);
    std::vector<plp::Constraint> kept;
    for (std::size_t idx : mr.irredundant) kept.push_back(input.row(idx));
    plp::print_polyhedron(*out, plp::Polyhedron(input.dimension(), std::move(kept)));
    return 0;
  }

  if (*bench) {
    std::vector<std::size_t> elim;
    std::size_t drop = plp::eliminate_count(gp);
    for (std::size_t i = 0; i < drop; ++i) elim.push_back(gp.variable_count - 1 - i);
    std::sort(elim.begin(), elim.end());
    *out << "config cn=" << gp.constraint_count << " vn=" << gp.variable_count
         << " pr=" << gp.projection_ratio << " d=" << gp.density << " eliminated=" << drop
         << " instances=" << instances << " repeats=" << repeats << " seed=" << gp.seed
         << "\n";
    double total_ms = 0;
    std::size_t runs = 0;
    for (std::size_t i = 0; i < instances; ++i) {
      plp::GeneratorParams one = gp;
      one.seed = gp.seed + i;
      plp::Polyhedron input = plp::generate(one);
      double inst_ms = 0;
      std::size_t region_count = 0, row_count = 0;
      for (std::size_t r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        plp::SolveResult res = plp::project_solve(input, elim);
        auto t1 = std::chrono::steady_clock::now();
        inst_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        region_count = res.regions.size();
        row_count = res.polyhedron.size();
        if (bench_oracle && r == 0) {
          try {
            plp::Polyhedron oracle = plp::fourier_motzkin(input, elim);
            if (!plp::poly_equal(res.polyhedron, oracle).equal)
              throw plp::InternalError("bench: result differs from the elimination oracle");
          } catch (const std::runtime_error& e) {
            std::cerr << "instance " << i << " oracle skipped: " << e.what() << "\n";
          }
        }
        ++runs;
      }
      total_ms += inst_ms;
      *out << "instance " << i << " regions " << region_count << " rows " << row_count
           << " mean_time_ms " << inst_ms / static_cast<double>(repeats) << "\n";
    }
    *out << "mean_time_ms " << total_ms / static_cast<double>(runs) << " executions " << runs
         << "\n";
    return 0;
  }

  if (*gen) {
    plp::print_polyhedron(*out, plp::generate(gen_p));
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const plp::NoInteriorError& e) {
    std::cerr << "error: " << e.what()
              << " (inputs must have a strict interior; split implicit equalities first)\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// aosearch: solve, generate and benchmark MPE instances from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "aosearch/generators.h"
#include "aosearch/report.h"

namespace {

using namespace aosearch;

constexpr int kExitSolved = 0;
constexpr int kExitInputError = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitMemout = 3;

int exit_code(SearchStatus s) {
  switch (s) {
    case SearchStatus::Solved: return kExitSolved;
    case SearchStatus::Timeout: return kExitTimeout;
    case SearchStatus::Memout: return kExitMemout;
  }
  return kExitInputError;
}

SearchLimits make_limits(double time_limit, double memory_mb) {
  SearchLimits l;
  l.time_limit_seconds = time_limit;
  if (memory_mb > 0) l.memory_limit_bytes = static_cast<std::size_t>(memory_mb * 1024.0 * 1024.0);
  return l;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct SolveFlags {
  std::string input;
  std::string evidence;
  std::string algorithm = "aobf";
  std::string heuristic = "smb";
  std::string tip = "deepest";
  int ibound = 2;
  std::uint64_t seed = 0;
  double time_limit = std::numeric_limits<double>::infinity();
  double memory_mb = 0;
  bool no_caching = false;
  bool dead_cache = false;
  bool header = false;
  bool print_assignment = false;
  bool no_time = false;
};

int cmd_solve(const SolveFlags& f) {
  SolverConfig config;
  BeliefNetwork net;
  Evidence evidence;
  try {
    config.algorithm = parse_algorithm(f.algorithm);
    config.heuristic = parse_heuristic_mode(f.heuristic);
    if (f.tip == "deepest") config.tip_policy = TipPolicy::Deepest;
    else if (f.tip == "first") config.tip_policy = TipPolicy::First;
    else throw std::invalid_argument("unknown tip policy '" + f.tip + "'");
    if (f.ibound < 1) throw std::invalid_argument("i-bound must be at least 1");
    net = load_uai(f.input);
    if (!f.evidence.empty()) evidence = load_evidence(f.evidence);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  config.i_bound = f.ibound;
  config.seed = f.seed;
  config.limits = make_limits(f.time_limit, f.memory_mb);
  config.caching = !f.no_caching;
  config.dead_cache_elimination = f.dead_cache;

  for (std::size_t k : net.unnormalized_factors())
    std::cerr << "warning: factor " << k << " is not a normalized CPT\n";

  RunRecord rec;
  Assignment assignment;
  try {
    rec = run_network(f.input, net, evidence, config, &assignment);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (f.header) std::cout << csv_header() << '\n';
  std::cout << to_csv(rec, f.no_time) << '\n';
  if (f.print_assignment && rec.status == SearchStatus::Solved) {
    for (std::size_t v = 0; v < assignment.size(); ++v)
      std::cerr << (v ? " " : "") << v << '=' << assignment[v];
    std::cerr << '\n';
  }
  return exit_code(rec.status);
}

struct GenerateFlags {
  std::string family;
  std::string out;
  int count = 1;
  std::uint64_t seed = 0;
  int n = 0, d = 2, c = 0, p = 0;
  double det = 0.0;
  int num_evidence = 0;
  double sigma2 = 0.22;
};

int cmd_generate(const GenerateFlags& f) {
  std::ostringstream sidecar, manifest;
  try {
    for (int k = 0; k < f.count; ++k) {
      const std::uint64_t seed = f.seed + static_cast<std::uint64_t>(k);
      const std::string stem = f.count == 1 ? f.out : f.out + "_" + std::to_string(k);
      nlohmann::ordered_json meta;
      meta["family"] = f.family;
      meta["seed"] = seed;
      BeliefNetwork net;
      Evidence evidence;
      if (f.family == "random") {
        net = gen_random(f.n, f.d, f.c, f.p, seed);
        meta["n"] = f.n;
        meta["d"] = f.d;
        meta["c"] = f.c;
        meta["p"] = f.p;
      } else if (f.family == "grid") {
        GridInstance g = gen_grid(f.n, f.det, f.num_evidence, seed);
        net = std::move(g.network);
        evidence = std::move(g.evidence);
        meta["n"] = f.n;
        meta["det_fraction"] = f.det;
        meta["num_evidence"] = f.num_evidence;
      } else if (f.family == "coding") {
        CodingInstance g = gen_coding(f.n, f.p, f.sigma2, seed);
        net = std::move(g.network);
        meta["n"] = f.n;
        meta["p"] = f.p;
        meta["sigma2"] = f.sigma2;
        meta["sent"] = g.sent;
      } else {
        throw GeneratorError("unknown family '" + f.family + "'");
      }
      write_file(stem + ".uai", serialize_uai(net));
      write_file(stem + ".evid", serialize_evidence(evidence));
      meta["uai"] = stem + ".uai";
      meta["evidence"] = stem + ".evid";
      sidecar << meta.dump() << '\n';
      manifest << std::filesystem::path(stem).filename().string() << ".uai "
               << std::filesystem::path(stem).filename().string() << ".evid\n";
    }
    write_file(f.out + ".jsonl", sidecar.str());
    write_file(f.out + ".manifest", manifest.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return 0;
}

struct BenchFlags {
  std::string manifest;
  std::vector<std::string> algorithms{"aobf", "aobb"};
  std::string heuristic = "smb";
  std::vector<int> ibounds{2};
  std::uint64_t seed = 0;
  double time_limit = std::numeric_limits<double>::infinity();
  double memory_mb = 0;
  std::string csv;
  std::string gnuplot;
  bool no_time = false;
};

int cmd_bench(const BenchFlags& f) {
  BenchConfig config;
  std::vector<Instance> instances;
  try {
    config.algorithms.clear();
    for (const std::string& a : f.algorithms) config.algorithms.push_back(parse_algorithm(a));
    config.heuristic = parse_heuristic_mode(f.heuristic);
    config.i_bounds = f.ibounds;
    config.seed = f.seed;
    config.limits = make_limits(f.time_limit, f.memory_mb);
    instances = parse_manifest(f.manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  BenchResult result = run_bench(instances, config);
  try {
    if (f.csv.empty()) {
      write_bench_csv(std::cout, result, config.heuristic, f.no_time);
    } else {
      std::ostringstream out;
      write_bench_csv(out, result, config.heuristic, f.no_time);
      write_file(f.csv, out.str());
    }
    if (!f.gnuplot.empty()) {
      std::ostringstream out;
      write_gnuplot(out, result);
      write_file(f.gnuplot, out.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AND/OR search for most probable explanations in belief networks"};
  app.require_subcommand(1);

  SolveFlags sf;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance and print a CSV record");
  solve->add_option("--input", sf.input, "UAI model file")->required();
  solve->add_option("--evidence", sf.evidence, "Evidence file");
  solve->add_option("--algorithm", sf.algorithm, "aobf, aobb, brute or be")->capture_default_str();
  solve->add_option("--heuristic", sf.heuristic, "smb or dmb")->capture_default_str();
  solve->add_option("--ibound", sf.ibound, "Mini-bucket i-bound")->capture_default_str();
  solve->add_option("--seed", sf.seed, "Tie-breaking seed for the variable order")->capture_default_str();
  solve->add_option("--time-limit", sf.time_limit, "Seconds");
  solve->add_option("--memory-limit", sf.memory_mb, "Megabytes (0 = unlimited)");
  solve->add_flag("--no-caching", sf.no_caching, "Disable AOBB context caching");
  solve->add_flag("--dead-cache-elim", sf.dead_cache, "Skip caching nodes whose context is the full path");
  solve->add_option("--tip", sf.tip, "AOBF tip selection: deepest or first")->capture_default_str();
  solve->add_flag("--header", sf.header, "Print the CSV header first");
  solve->add_flag("--print-assignment", sf.print_assignment, "Print var=value pairs to stderr");
  solve->add_flag("--no-time", sf.no_time, "Print 0 in the time column");

  GenerateFlags gf;
  CLI::App* gen = app.add_subcommand("generate", "Write synthetic benchmark instances");
  gen->add_option("--family", gf.family, "random, grid or coding")->required();
  gen->add_option("--out", gf.out, "Output path prefix")->required();
  gen->add_option("--count", gf.count, "Number of instances (seeds seed..seed+count-1)")->capture_default_str();
  gen->add_option("--seed", gf.seed)->capture_default_str();
  gen->add_option("--n", gf.n, "Variables (random), grid side (grid) or input bits (coding)")->required();
  gen->add_option("--d", gf.d, "Domain size (random)")->capture_default_str();
  gen->add_option("--c", gf.c, "Number of CPTs (random)");
  gen->add_option("--p", gf.p, "Parents per CPT (random, coding)");
  gen->add_option("--det", gf.det, "Deterministic CPT fraction (grid)");
  gen->add_option("--evidence", gf.num_evidence, "Evidence variables (grid)");
  gen->add_option("--sigma2", gf.sigma2, "Channel noise variance (coding)")->capture_default_str();

  BenchFlags bf;
  CLI::App* bench = app.add_subcommand("bench", "Run an (instance, algorithm, i-bound) sweep");
  bench->add_option("--manifest", bf.manifest, "Instance list: 'model.uai [evidence]' per line")->required();
  bench->add_option("--algorithms", bf.algorithms, "Algorithms to compare")->capture_default_str();
  bench->add_option("--heuristic", bf.heuristic)->capture_default_str();
  bench->add_option("--ibounds", bf.ibounds, "i-bound sweep")->capture_default_str();
  bench->add_option("--seed", bf.seed)->capture_default_str();
  bench->add_option("--time-limit", bf.time_limit, "Seconds per cell");
  bench->add_option("--memory-limit", bf.memory_mb, "Megabytes per cell (0 = unlimited)");
  bench->add_option("--csv", bf.csv, "Write the CSV here instead of stdout");
  bench->add_option("--gnuplot", bf.gnuplot, "Also write mean time/nodes per i-bound");
  bench->add_flag("--no-time", bf.no_time, "Print 0 in the time columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }
  if (*solve) return cmd_solve(sf);
  if (*gen) return cmd_generate(gf);
  return cmd_bench(bf);
}

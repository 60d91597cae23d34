/*
 * report.h
 *
 * Run records, their CSV form, and the benchmark sweep used by the CLI.
 */

#ifndef AOSEARCH_REPORT_H_
#define AOSEARCH_REPORT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aosearch/solver.h"

namespace aosearch {

struct RunRecord {
  std::string instance;
  int n = 0;
  int e = 0;
  int induced_width = 0;
  int height = 0;
  Algorithm algorithm = Algorithm::Aobf;
  HeuristicMode heuristic = HeuristicMode::Static;
  int i_bound = 0;
  std::uint64_t seed = 0;
  SearchStatus status = SearchStatus::Solved;
  double mpe_log10 = 0.0;
  std::uint64_t nodes = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_entries = 0;
  double seconds = 0.0;
};

/// Column names, in field order.
std::string csv_header();

/// One CSV line (no newline). Unsolved runs print "-" in the value columns;
/// a zero probability prints log10 "-inf" and probability "0". With
/// omit_time the time column is "0", which makes reruns byte-comparable.
std::string to_csv(const RunRecord& r, bool omit_time = false);

/// Formats with 12 significant digits.
std::string format_number(double v);

struct Instance {
  std::string name;
  std::string uai_path;
  std::string evidence_path;  // empty for none
};

/// Manifest: one instance per line, "model.uai [evidence]"; blank lines and
/// lines starting with '#' are skipped. Relative paths resolve against the
/// manifest's directory.
std::vector<Instance> parse_manifest(const std::string& path);

/// Loads an instance, applies evidence and solves it.
RunRecord run_instance(const Instance& inst, const SolverConfig& config,
                       Assignment* original_assignment = nullptr);

/// Same as run_instance for an in-memory network and evidence.
RunRecord run_network(const std::string& name, const BeliefNetwork& net, const Evidence& evidence,
                      const SolverConfig& config, Assignment* original_assignment = nullptr);

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::Aobf, Algorithm::Aobb};
  HeuristicMode heuristic = HeuristicMode::Static;
  std::vector<int> i_bounds{2};
  std::uint64_t seed = 0;
  SearchLimits limits;
};

struct BenchSummary {
  Algorithm algorithm;
  int i_bound;
  int runs = 0;
  int solved = 0;
  double mean_nodes = 0.0;    // over solved runs
  double mean_seconds = 0.0;  // over solved runs
};

struct BenchResult {
  std::vector<RunRecord> records;
  std::vector<BenchSummary> summaries;
};

/// Runs every (instance, algorithm, i) cell; failures are recorded in the
/// status column and the sweep continues.
BenchResult run_bench(const std::vector<Instance>& instances, const BenchConfig& config);

/// CSV of all records followed by one "mean" line per (algorithm, i).
void write_bench_csv(std::ostream& out, const BenchResult& bench, HeuristicMode mode,
                     bool omit_time = false);

/// Whitespace table: i, then mean seconds and mean nodes per algorithm.
void write_gnuplot(std::ostream& out, const BenchResult& bench);

}  // namespace aosearch

#endif  // AOSEARCH_REPORT_H_

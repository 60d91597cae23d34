/*
 * solver.cpp
 */

#include "aosearch/solver.h"

#include <chrono>
#include <stdexcept>

namespace aosearch {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Aobf: return "aobf";
    case Algorithm::Aobb: return "aobb";
    case Algorithm::Brute: return "brute";
    case Algorithm::BucketElimination: return "be";
  }
  return "?";
}

std::string to_string(HeuristicMode m) { return m == HeuristicMode::Static ? "smb" : "dmb"; }

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::Timeout: return "timeout";
    case SearchStatus::Memout: return "memout";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "aobf") return Algorithm::Aobf;
  if (s == "aobb") return Algorithm::Aobb;
  if (s == "brute") return Algorithm::Brute;
  if (s == "be") return Algorithm::BucketElimination;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

HeuristicMode parse_heuristic_mode(const std::string& s) {
  if (s == "smb") return HeuristicMode::Static;
  if (s == "dmb") return HeuristicMode::Dynamic;
  throw std::invalid_argument("unknown heuristic '" + s + "'");
}

Structure analyze(const BeliefNetwork& net, std::uint64_t seed) {
  Structure s;
  s.graph = primal_graph(net);
  s.order = min_fill_order(s.graph, seed);
  s.tree = build_pseudo_tree(s.graph, s.order);
  s.contexts = compute_contexts(s.tree, s.graph);
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

SolveResult from_oracle(const OracleResult& o) {
  SolveResult r;
  r.mpe_log_value = o.mpe_log_value;
  r.assignment = o.assignment;
  r.solution_weight = o.mpe_log_value;
  return r;
}

}  // namespace

SolverReport solve_network(const BeliefNetwork& net, const SolverConfig& config) {
  const auto start = Clock::now();
  SolverReport report;
  if (config.limits.time_limit_seconds <= 0) {
    report.result.status = SearchStatus::Timeout;
    return report;
  }
  if (net.num_variables() == 0) {
    report.result.mpe_log_value = report.result.solution_weight = net.log_constant();
    return report;
  }
  Structure s = analyze(net, config.seed);
  report.induced_width = s.order.induced_width;
  report.height = s.tree.height();
  if (config.algorithm == Algorithm::Brute) {
    report.result = from_oracle(enumerate_mpe(net));
    report.result.stats.seconds = seconds_since(start);
    return report;
  }
  try {
    if (config.algorithm == Algorithm::BucketElimination) {
      report.result = from_oracle(bucket_elimination_mpe(net, s.order, config.limits.memory_limit_bytes));
      report.result.stats.seconds = seconds_since(start);
      return report;
    }

    SearchSpace space(net, s.tree, s.contexts);
    std::unique_ptr<Heuristic> h;
    if (config.heuristic == HeuristicMode::Static)
      h = std::make_unique<StaticMiniBucket>(
          net, compile_smb(net, s.order, s.tree, config.i_bound, config.limits.memory_limit_bytes));
    else
      h = std::make_unique<DynamicMiniBucket>(net, s.order, s.tree, config.i_bound,
                                              config.limits.memory_limit_bytes);

    SearchLimits remaining = config.limits;
    remaining.time_limit_seconds -= seconds_since(start);
    if (config.algorithm == Algorithm::Aobf) {
      report.result = aobf(space, *h, AobfOptions{config.tip_policy, remaining});
    } else {
      report.result = aobb(space, *h, AobbOptions{config.caching, config.dead_cache_elimination, remaining});
    }
  } catch (const MemoryLimitError&) {
    report.result = SolveResult{};
    report.result.status = SearchStatus::Memout;
  }
  report.result.stats.seconds = seconds_since(start);
  return report;
}

}  // namespace aosearch

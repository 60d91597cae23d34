/*
 * solver.h
 *
 * End-to-end solve of an evidence-reduced network: min-fill order,
 * pseudo-tree, contexts, heuristic compilation, then the chosen algorithm.
 */

#ifndef AOSEARCH_SOLVER_H_
#define AOSEARCH_SOLVER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "aosearch/heuristics.h"
#include "aosearch/model.h"
#include "aosearch/oracle.h"
#include "aosearch/search.h"
#include "aosearch/structure.h"

namespace aosearch {

enum class Algorithm { Aobf, Aobb, Brute, BucketElimination };
enum class HeuristicMode { Static, Dynamic };

std::string to_string(Algorithm a);
std::string to_string(HeuristicMode m);
std::string to_string(SearchStatus s);
Algorithm parse_algorithm(const std::string& s);
HeuristicMode parse_heuristic_mode(const std::string& s);

struct SolverConfig {
  Algorithm algorithm = Algorithm::Aobf;
  HeuristicMode heuristic = HeuristicMode::Static;
  int i_bound = 2;
  std::uint64_t seed = 0;
  SearchLimits limits;
  bool caching = true;
  bool dead_cache_elimination = false;
  TipPolicy tip_policy = TipPolicy::Deepest;
};

/// Everything derived from the network before search.
struct Structure {
  UndirectedGraph graph;
  EliminationOrder order;
  PseudoTree tree;
  ContextTable contexts;
};

Structure analyze(const BeliefNetwork& net, std::uint64_t seed);

struct SolverReport {
  SolveResult result;
  int induced_width = 0;
  int height = 0;
};

/// Solves an already evidence-reduced network. The timer covers ordering,
/// heuristic compilation and search.
SolverReport solve_network(const BeliefNetwork& net, const SolverConfig& config);

}  // namespace aosearch

#endif  // AOSEARCH_SOLVER_H_

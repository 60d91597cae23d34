/*
 * search.h
 *
 * Best-first (AOBF) and depth-first branch-and-bound (AOBB) search over the
 * context-minimal AND/OR graph. Values are natural logs; -inf is probability
 * zero.
 */

#ifndef AOSEARCH_SEARCH_H_
#define AOSEARCH_SEARCH_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "aosearch/heuristics.h"
#include "aosearch/model.h"
#include "aosearch/structure.h"

namespace aosearch {

/// Network, pseudo-tree and contexts bundled with the per-variable lookup
/// tables the searches share. Holds references; the inputs must outlive it.
class SearchSpace {
 public:
  SearchSpace(const BeliefNetwork& net, const PseudoTree& t, const ContextTable& contexts);

  const BeliefNetwork& network() const { return net_; }
  const PseudoTree& tree() const { return t_; }
  const ContextTable& contexts() const { return contexts_; }
  const std::vector<int>& bucket_factors(int var) const { return bucket_factors_[var]; }

  /// Log-sum of the factors whose deepest variable is var, at assignment
  /// (var and its context must be assigned).
  double weight(int var, std::span<const int> assignment) const;

  /// Mixed-radix key of var's context under assignment; nullopt if the
  /// context space does not fit in 64 bits (such variables are not cached).
  std::optional<std::uint64_t> context_key(int var, std::span<const int> assignment) const;

  /// Number of distinct context assignments of var (saturates at UINT64_MAX).
  std::uint64_t context_space(int var) const { return context_space_[var]; }

  /// The context of var is all of its ancestors plus var: every instance of
  /// the variable has a unique path, so cached entries are never reused.
  bool dead_cache(int var) const { return dead_cache_[var]; }

 private:
  const BeliefNetwork& net_;
  const PseudoTree& t_;
  const ContextTable& contexts_;
  std::vector<std::vector<int>> bucket_factors_;
  std::vector<std::uint64_t> context_space_;
  std::vector<char> dead_cache_;
};

/// Checked arc weight w(X_i, x_i): path must assign every ancestor of var.
double arc_weight(const SearchSpace& space, std::span<const int> path, int var, int value);

enum class SearchStatus { Solved, Timeout, Memout };

struct SearchLimits {
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  std::size_t memory_limit_bytes = kUnlimitedMemory;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;  // OR + AND expansion events
  std::uint64_t or_expanded = 0;
  std::uint64_t and_expanded = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_entries = 0;
  std::vector<std::uint64_t> cache_entries_per_var;
  double seconds = 0.0;
};

struct SolveResult {
  SearchStatus status = SearchStatus::Solved;
  /// MPE log value including the network's log constant. When the search is
  /// aborted this is the best bound known at that point.
  double mpe_log_value = kLogZero;
  Assignment assignment;
  /// Sum of the arc weights of the returned solution tree plus the log
  /// constant; equals log_probability(net, assignment) when solved.
  double solution_weight = kLogZero;
  SearchStats stats;
};

/// Hooks for instrumented runs.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  /// AOBF picked a partial solution tree whose evaluation (instantiated
  /// weights plus tip values) is f.
  virtual void on_select(double /*f*/) {}
  /// A node value changed during revision.
  virtual void on_revise(bool /*is_and*/, int /*var*/, double /*before*/, double /*after*/) {}
};

enum class TipPolicy {
  Deepest,  // deepest tip, ties by pseudo-tree preorder
  First,    // first tip in pseudo-tree preorder
};

struct AobfOptions {
  TipPolicy tip_policy = TipPolicy::Deepest;
  SearchLimits limits;
};

/// Explicit AND/OR graph for best-first AO* search over the context-minimal space.
class BestFirstSearch {
 public:
  struct OrNode {
    int var;
    int parent;  // AND node id, -1 at the root
    double value;
    bool expanded = false;
    bool solved = false;
    int marked = -1;  // index into children
    std::vector<int> children;  // AND node ids
    std::vector<double> weights;
    std::vector<int> context;  // values of context(var); var's own slot unused
  };
  struct AndNode {
    int var;
    int val;
    double value;
    bool expanded = false;
    bool solved = false;
    std::vector<int> children;  // OR node ids
    std::vector<int> parents;   // OR node ids
    std::vector<int> context;   // values of context(var)
  };
  struct Tip {
    bool is_and;
    int id;
  };

  BestFirstSearch(const SearchSpace& space, const Heuristic& h, AobfOptions options = {},
                  SearchObserver* observer = nullptr);

  /// Best partial solution tree: follow marked arcs from the root and collect
  /// the unexpanded, unsolved tips.
  std::vector<Tip> partial_solution_tips() const;
  Tip select_tip(std::span<const Tip> tips) const;
  void expand(Tip tip);
  void revise(Tip start);
  /// One iteration of the main loop; returns false once the root is solved.
  bool step();

  bool solved() const { return or_nodes_[0].solved; }
  double root_value() const { return or_nodes_[0].value; }
  const std::vector<OrNode>& or_nodes() const { return or_nodes_; }
  const std::vector<AndNode>& and_nodes() const { return and_nodes_; }
  const SearchStats& stats() const { return stats_; }
  std::size_t approx_bytes() const { return bytes_; }

  /// Reads the solution off the marked arcs. Variables outside the marked
  /// tree (possible only when the value is -inf) get value 0.
  Assignment solution(double* weight_sum = nullptr) const;

 private:
  int level(Tip tip) const;
  void load_context(const std::vector<int>& ctx, int var);
  void clear_context(int var);

  const SearchSpace& space_;
  const Heuristic& h_;
  AobfOptions options_;
  SearchObserver* observer_;
  std::vector<OrNode> or_nodes_;
  std::vector<AndNode> and_nodes_;
  std::vector<std::unordered_map<std::uint64_t, int>> cache_;
  Assignment scratch_;
  SearchStats stats_;
  std::size_t bytes_ = 0;
};

SolveResult aobf(const SearchSpace& space, const Heuristic& h, const AobfOptions& options = {},
                 SearchObserver* observer = nullptr);

struct AobbOptions {
  bool caching = true;
  bool dead_cache_elimination = false;
  SearchLimits limits;
};

SolveResult aobb(const SearchSpace& space, const Heuristic& h, const AobbOptions& options = {});

}  // namespace aosearch

#endif  // AOSEARCH_SEARCH_H_

/*
 * heuristics.h
 *
 * Mini-bucket upper bounds on subproblem values. The static variant (SMB)
 * compiles the augmented bucket structure once; the dynamic variant (DMB)
 * reruns mini-bucket elimination on the conditioned subproblem of every node
 * it is asked about.
 */

#ifndef AOSEARCH_HEURISTICS_H_
#define AOSEARCH_HEURISTICS_H_

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "aosearch/model.h"
#include "aosearch/structure.h"
#include "aosearch/table.h"

namespace aosearch {

class MemoryLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kUnlimitedMemory = std::numeric_limits<std::size_t>::max();

/// A search node as seen by a heuristic: OR node `var` (value kUnassigned)
/// or AND node <var, value>.
struct NodeRef {
  int var;
  int value = kUnassigned;
  bool is_and() const { return value != kUnassigned; }
};

struct MiniBucketMessage {
  LogTable table;
  int origin;       // bucket that produced the message
  int destination;  // bucket it was placed in, kNoParent for constants
};

struct MiniBucketTables {
  int i_bound = 0;
  /// buckets[v][k]: function ids in mini-bucket k of v's bucket. Ids below
  /// num_factors are network factors; the rest are messages offset by it.
  std::vector<std::vector<std::vector<int>>> buckets;
  std::vector<MiniBucketMessage> messages;
  /// Messages generated strictly below v and placed at v or above: the
  /// terms of the AND-node bound for v.
  std::vector<std::vector<int>> and_terms;
  /// Factors whose deepest scope variable is v (the arc-weight functions).
  std::vector<std::vector<int>> bucket_factors;
  std::size_t num_factors = 0;
  std::size_t table_entries = 0;
};

/// Mini-bucket elimination along ord with joint scopes capped at i variables
/// (the bucket variable included). Throws MemoryLimitError when the messages
/// would need more than memory_budget bytes.
MiniBucketTables compile_smb(const BeliefNetwork& net, const EliminationOrder& ord,
                             const PseudoTree& t, int i_bound,
                             std::size_t memory_budget = kUnlimitedMemory);

/// Greedy first-fit split of a bucket: functions sorted by decreasing scope
/// size, each placed in the first mini-bucket whose joint scope stays within
/// i_bound. Returns indices into `scopes`.
std::vector<std::vector<int>> partition_bucket(std::span<const std::vector<int>* const> scopes,
                                               int i_bound);

class Heuristic {
 public:
  virtual ~Heuristic() = default;

  /// Upper bound on the value below AND node <var, assignment[var]>.
  /// The assignment must fix var and its context.
  virtual double and_bound(int var, std::span<const int> assignment) const = 0;

  /// Upper bound on the value of OR node var; the assignment must fix the
  /// context of var. assignment[var] is used as scratch and restored.
  virtual double or_bound(int var, std::span<int> assignment) const = 0;
};

class StaticMiniBucket : public Heuristic {
 public:
  StaticMiniBucket(const BeliefNetwork& net, MiniBucketTables tables);

  double and_bound(int var, std::span<const int> assignment) const override;
  double or_bound(int var, std::span<int> assignment) const override;

  const MiniBucketTables& tables() const { return tables_; }
  /// Bound on the whole problem, excluding the network's log constant.
  double root_bound(const PseudoTree& t) const;

 private:
  const BeliefNetwork& net_;
  MiniBucketTables tables_;
};

class DynamicMiniBucket : public Heuristic {
 public:
  DynamicMiniBucket(const BeliefNetwork& net, const EliminationOrder& ord, const PseudoTree& t,
                    int i_bound, std::size_t memory_budget = kUnlimitedMemory);

  double and_bound(int var, std::span<const int> assignment) const override;
  double or_bound(int var, std::span<int> assignment) const override;

 private:
  const BeliefNetwork& net_;
  const EliminationOrder& ord_;
  const PseudoTree& t_;
  int i_bound_;
  std::size_t memory_budget_;
};

/// Mini-bucket elimination on the subproblem rooted at `node`, with factors
/// sliced at the ancestors fixed in `assignment` (and at node.value for AND
/// nodes). Returns the resulting bound.
double compute_dmb(const BeliefNetwork& net, const EliminationOrder& ord, const PseudoTree& t,
                   int i_bound, std::span<const int> assignment, NodeRef node,
                   std::size_t memory_budget = kUnlimitedMemory);

/// Checked evaluation: every pseudo-tree ancestor of node.var (and node.var
/// itself for AND nodes) must be assigned. Terminal AND nodes evaluate to 0.
double evaluate_h(const Heuristic& h, const PseudoTree& t, std::span<const int> assignment,
                  NodeRef node);

}  // namespace aosearch

#endif  // AOSEARCH_HEURISTICS_H_

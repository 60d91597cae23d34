/*
 * structure.h
 *
 * Elimination orders, pseudo-trees and AND-node contexts.
 */

#ifndef AOSEARCH_STRUCTURE_H_
#define AOSEARCH_STRUCTURE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "aosearch/graph.h"
#include "aosearch/model.h"

namespace aosearch {

inline constexpr int kNoParent = -1;

struct EliminationOrder {
  std::vector<int> order;  // order[0] is eliminated first
  int induced_width = 0;

  /// position[v] = index of v in order
  std::vector<int> positions() const;
};

/// Greedy min-fill ordering; ties are broken uniformly at random from `seed`.
EliminationOrder min_fill_order(const UndirectedGraph& g, std::uint64_t seed);

/// Induced width of g along `order`.
int induced_width(const UndirectedGraph& g, std::span<const int> order);

/// Triangulates g along `order`.
UndirectedGraph induced_graph(const UndirectedGraph& g, std::span<const int> order);

class PseudoTree {
 public:
  PseudoTree() = default;
  /// parent[v] == kNoParent for the root. Children are listed in the order
  /// they appear in child_order (variable id order when empty).
  explicit PseudoTree(std::vector<int> parent, std::span<const int> child_order = {});

  int num_variables() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  /// Root has depth 0; height is the maximum depth.
  int depth(int v) const { return depth_[v]; }
  int height() const { return height_; }
  const std::vector<int>& dfs_order() const { return dfs_order_; }
  int preorder_index(int v) const { return preorder_[v]; }
  bool is_ancestor(int ancestor, int v) const;
  /// Ancestors of v from the root down, v excluded.
  std::vector<int> ancestors(int v) const;
  /// All variables in the subtree of v, v first (preorder).
  std::vector<int> subtree(int v) const;

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  std::vector<int> dfs_order_;
  std::vector<int> preorder_;
  std::vector<int> subtree_end_;
  int root_ = kNoParent;
  int height_ = 0;
};

/// Bucket-tree pseudo-tree: the parent of v is the earliest-eliminated of
/// v's later neighbours in the induced graph. Roots of further connected
/// components hang below the last-eliminated vertex so the result is a single
/// tree.
PseudoTree build_pseudo_tree(const UndirectedGraph& g, const EliminationOrder& ord);

/// True iff every edge of g joins an ancestor/descendant pair of t.
bool validate_pseudo_tree(const PseudoTree& t, const UndirectedGraph& g);

/// context[v]: the ancestors of v connected to v or to a descendant of v,
/// ordered root-first, followed by v itself.
struct ContextTable {
  std::vector<std::vector<int>> context;

  const std::vector<int>& of(int v) const { return context[v]; }
  /// max |context| - 1
  int max_width() const;
};

ContextTable compute_contexts(const PseudoTree& t, const UndirectedGraph& g);

/// For every variable, the factors whose deepest scope variable in t is that
/// variable. Each factor lands in exactly one list.
std::vector<std::vector<int>> assign_factors(const BeliefNetwork& net, const PseudoTree& t);

}  // namespace aosearch

#endif  // AOSEARCH_STRUCTURE_H_

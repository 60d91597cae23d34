/*
 * structure.cpp
 */

#include "aosearch/structure.h"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace aosearch {

std::vector<int> EliminationOrder::positions() const {
  std::vector<int> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
  return pos;
}

namespace {

int fill_count(const std::vector<std::set<int>>& adj, int v) {
  int fill = 0;
  for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
    for (auto b = std::next(a); b != adj[v].end(); ++b)
      if (!adj[*a].count(*b)) ++fill;
  return fill;
}

}  // namespace

EliminationOrder min_fill_order(const UndirectedGraph& g, std::uint64_t seed) {
  const int n = g.num_vertices();
  if (n == 0) throw std::invalid_argument("min_fill_order: empty graph");
  std::mt19937_64 rng(seed);

  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::vector<int> fill(n);
  for (int v = 0; v < n; ++v) fill[v] = fill_count(adj, v);
  std::vector<char> done(n, 0);

  EliminationOrder out;
  out.order.reserve(n);
  std::vector<int> ties;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    ties.clear();
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (best < 0 || fill[v] < best) {
        best = fill[v];
        ties.assign(1, v);
      } else if (fill[v] == best) {
        ties.push_back(v);
      }
    }
    int pick = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)];

    std::vector<int> nbrs(adj[pick].begin(), adj[pick].end());
    out.induced_width = std::max(out.induced_width, static_cast<int>(nbrs.size()));
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        adj[nbrs[a]].insert(nbrs[b]);
        adj[nbrs[b]].insert(nbrs[a]);
      }
    for (int u : nbrs) adj[u].erase(pick);
    adj[pick].clear();
    done[pick] = 1;
    out.order.push_back(pick);

    // only vertices within distance two can see a changed fill count
    std::set<int> touched(nbrs.begin(), nbrs.end());
    for (int u : nbrs) touched.insert(adj[u].begin(), adj[u].end());
    for (int u : touched) fill[u] = fill_count(adj, u);
  }
  return out;
}

UndirectedGraph induced_graph(const UndirectedGraph& g, std::span<const int> order) {
  const int n = g.num_vertices();
  std::vector<int> pos(n);
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
  UndirectedGraph out = g;
  for (int v : order) {
    std::vector<int> later;
    for (int u : out.neighbors(v))
      if (pos[u] > pos[v]) later.push_back(u);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b) out.add_edge(later[a], later[b]);
  }
  return out;
}

int induced_width(const UndirectedGraph& g, std::span<const int> order) {
  UndirectedGraph ig = induced_graph(g, order);
  std::vector<int> pos(g.num_vertices());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
  int width = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int later = 0;
    for (int u : ig.neighbors(v)) later += pos[u] > pos[v];
    width = std::max(width, later);
  }
  return width;
}

PseudoTree::PseudoTree(std::vector<int> parent, std::span<const int> child_order)
    : parent_(std::move(parent)) {
  const int n = num_variables();
  children_.assign(n, {});
  std::vector<int> sequence(child_order.begin(), child_order.end());
  if (sequence.empty())
    for (int v = 0; v < n; ++v) sequence.push_back(v);
  if (static_cast<int>(sequence.size()) != n)
    throw std::invalid_argument("child order must list every variable");
  for (int v : sequence) {
    if (parent_[v] == kNoParent) {
      if (root_ != kNoParent) throw std::invalid_argument("pseudo-tree has more than one root");
      root_ = v;
    } else {
      children_[parent_[v]].push_back(v);
    }
  }
  if (n > 0 && root_ == kNoParent) throw std::invalid_argument("pseudo-tree has no root");

  depth_.assign(n, 0);
  preorder_.assign(n, -1);
  subtree_end_.assign(n, 0);
  if (n == 0) return;
  // iterative preorder; children visited in stored order
  std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
  preorder_[root_] = 0;
  dfs_order_.push_back(root_);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children_[v].size()) {
      int c = children_[v][next++];
      if (preorder_[c] != -1) throw std::invalid_argument("pseudo-tree contains a cycle");
      depth_[c] = depth_[v] + 1;
      height_ = std::max(height_, depth_[c]);
      preorder_[c] = static_cast<int>(dfs_order_.size());
      dfs_order_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      subtree_end_[v] = static_cast<int>(dfs_order_.size());
      stack.pop_back();
    }
  }
  if (static_cast<int>(dfs_order_.size()) != n)
    throw std::invalid_argument("pseudo-tree does not span all variables");
}

bool PseudoTree::is_ancestor(int ancestor, int v) const {
  return preorder_[ancestor] < preorder_[v] && preorder_[v] < subtree_end_[ancestor];
}

std::vector<int> PseudoTree::ancestors(int v) const {
  std::vector<int> out;
  for (int p = parent_[v]; p != kNoParent; p = parent_[p]) out.push_back(p);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> PseudoTree::subtree(int v) const {
  return {dfs_order_.begin() + preorder_[v], dfs_order_.begin() + subtree_end_[v]};
}

PseudoTree build_pseudo_tree(const UndirectedGraph& g, const EliminationOrder& ord) {
  const int n = g.num_vertices();
  if (static_cast<int>(ord.order.size()) != n)
    throw std::invalid_argument("elimination order does not cover the graph");
  UndirectedGraph ig = induced_graph(g, ord.order);
  std::vector<int> pos = ord.positions();
  int last = ord.order.back();
  std::vector<int> parent(n, kNoParent);
  for (int v = 0; v < n; ++v) {
    if (v == last) continue;
    int best = kNoParent;
    for (int u : ig.neighbors(v))
      if (pos[u] > pos[v] && (best == kNoParent || pos[u] < pos[best])) best = u;
    parent[v] = best == kNoParent ? last : best;
  }
  // children listed in reverse elimination order
  std::vector<int> visit(ord.order.rbegin(), ord.order.rend());
  return PseudoTree(std::move(parent), visit);
}

bool validate_pseudo_tree(const PseudoTree& t, const UndirectedGraph& g) {
  if (t.num_variables() != g.num_vertices()) return false;
  for (auto [u, v] : g.edges())
    if (!t.is_ancestor(u, v) && !t.is_ancestor(v, u)) return false;
  return true;
}

int ContextTable::max_width() const {
  int w = 0;
  for (const auto& c : context) w = std::max(w, static_cast<int>(c.size()) - 1);
  return w;
}

ContextTable compute_contexts(const PseudoTree& t, const UndirectedGraph& g) {
  const int n = t.num_variables();
  std::vector<std::set<int>> above(n);
  // bottom-up: reverse preorder visits children before parents
  const auto& order = t.dfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int u : g.neighbors(v))
      if (t.is_ancestor(u, v)) above[v].insert(u);
    for (int c : t.children(v))
      for (int u : above[c])
        if (u != v) above[v].insert(u);
  }
  ContextTable out;
  out.context.resize(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> ctx(above[v].begin(), above[v].end());
    std::sort(ctx.begin(), ctx.end(), [&](int a, int b) { return t.depth(a) < t.depth(b); });
    ctx.push_back(v);
    out.context[v] = std::move(ctx);
  }
  return out;
}

std::vector<std::vector<int>> assign_factors(const BeliefNetwork& net, const PseudoTree& t) {
  std::vector<std::vector<int>> out(net.num_variables());
  for (std::size_t f = 0; f < net.factors().size(); ++f) {
    const auto& scope = net.factors()[f].scope();
    int deepest = scope.front();
    for (int v : scope)
      if (t.depth(v) > t.depth(deepest)) deepest = v;
    for (int v : scope)
      if (v != deepest && !t.is_ancestor(v, deepest))
        throw std::invalid_argument("factor scope is not a chain of the pseudo-tree");
    out[deepest].push_back(static_cast<int>(f));
  }
  return out;
}

}  // namespace aosearch

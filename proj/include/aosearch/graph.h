/*
 * graph.h
 */

#ifndef AOSEARCH_GRAPH_H_
#define AOSEARCH_GRAPH_H_

#include <utility>
#include <vector>

namespace aosearch {

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int num_vertices = 0) : adj_(num_vertices) {}

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;
  std::size_t num_edges() const;

  bool operator==(const UndirectedGraph&) const = default;

 private:
  std::vector<std::vector<int>> adj_;
};

}  // namespace aosearch

#endif  // AOSEARCH_GRAPH_H_

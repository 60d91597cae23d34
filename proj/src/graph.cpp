/*
 * graph.cpp
 */

#include "aosearch/graph.h"

#include <algorithm>

namespace aosearch {

void UndirectedGraph::add_edge(int u, int v) {
  if (u == v || has_edge(u, v)) return;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

bool UndirectedGraph::has_edge(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_vertices(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::size_t UndirectedGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

}  // namespace aosearch

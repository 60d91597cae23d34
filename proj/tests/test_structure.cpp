#include <doctest.h>

#include <random>

#include "support.h"

using namespace aosearch;

namespace {

UndirectedGraph complete(int n) {
  UndirectedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

UndirectedGraph random_graph(std::mt19937_64& rng, int n, double p) {
  UndirectedGraph g(n);
  std::bernoulli_distribution edge(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

// Width of an order by direct simulation on an adjacency matrix.
int reference_width(const UndirectedGraph& g, const std::vector<int>& order) {
  int n = g.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  std::vector<char> gone(n, 0);
  int width = 0;
  for (int v : order) {
    std::vector<int> nb;
    for (int u = 0; u < n; ++u)
      if (!gone[u] && adj[v][u]) nb.push_back(u);
    width = std::max(width, static_cast<int>(nb.size()));
    for (int a : nb)
      for (int b : nb)
        if (a != b) adj[a][b] = 1;
    gone[v] = 1;
  }
  return width;
}

}  // namespace

TEST_CASE("min-fill widths on small graphs") {
  CHECK(min_fill_order(complete(4), 0).induced_width == 3);
  UndirectedGraph chain(5);
  for (int v = 0; v + 1 < 5; ++v) chain.add_edge(v, v + 1);
  CHECK(min_fill_order(chain, 0).induced_width == 1);
  UndirectedGraph cycle(4);
  for (int v = 0; v < 4; ++v) cycle.add_edge(v, (v + 1) % 4);
  CHECK(min_fill_order(cycle, 0).induced_width == 2);
  CHECK(min_fill_order(UndirectedGraph(3), 0).induced_width == 0);
}

TEST_CASE("min-fill is a seeded permutation with a correctly measured width") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    UndirectedGraph g = random_graph(rng, 3 + trial % 15, 0.3);
    EliminationOrder o = min_fill_order(g, trial);
    std::vector<int> sorted = o.order;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 0; v < g.num_vertices(); ++v) CHECK(sorted[v] == v);
    CHECK(o.induced_width == reference_width(g, o.order));
    CHECK(induced_width(g, o.order) == o.induced_width);
    CHECK(min_fill_order(g, trial).order == o.order);
  }
}

TEST_CASE("pseudo-tree shape") {
  SUBCASE("star has height one") {
    UndirectedGraph star(6);
    for (int v = 1; v < 6; ++v) star.add_edge(0, v);
    PseudoTree t = build_pseudo_tree(star, min_fill_order(star, 0));
    CHECK(t.root() == 0);
    CHECK(t.height() == 1);
    CHECK(validate_pseudo_tree(t, star));
  }
  SUBCASE("disconnected graphs still give one tree") {
    UndirectedGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    PseudoTree t = build_pseudo_tree(g, min_fill_order(g, 0));
    CHECK(validate_pseudo_tree(t, g));
    CHECK(t.dfs_order().size() == 4);
  }
  SUBCASE("validation rejects a tree that splits an edge across branches") {
    UndirectedGraph g(3);
    g.add_edge(1, 2);
    PseudoTree bad({kNoParent, 0, 0});
    CHECK_FALSE(validate_pseudo_tree(bad, g));
  }
}

TEST_CASE("random graphs yield valid pseudo-trees whose contexts match the width") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    UndirectedGraph g = random_graph(rng, 2 + trial % 20, 0.25);
    EliminationOrder o = min_fill_order(g, trial);
    PseudoTree t = build_pseudo_tree(g, o);
    REQUIRE(validate_pseudo_tree(t, g));
    ContextTable ctx = compute_contexts(t, g);
    CHECK(ctx.max_width() == o.induced_width);
    for (int v = 0; v < g.num_vertices(); ++v) {
      REQUIRE(!ctx.of(v).empty());
      CHECK(ctx.of(v).back() == v);
      for (std::size_t k = 0; k + 1 < ctx.of(v).size(); ++k) CHECK(t.is_ancestor(ctx.of(v)[k], v));
    }
  }
}

TEST_CASE("contexts agree with the definition on generated networks") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    BeliefNetwork net = gen_random(14, 2, 12, 2, seed);
    Structure s = analyze(net, seed);
    for (int v = 0; v < net.num_variables(); ++v) {
      std::vector<int> mine = s.contexts.of(v);
      std::sort(mine.begin(), mine.end());
      CHECK(mine == testsupport::definition_context(net, s.tree, v));
    }
  }
}

TEST_CASE("chain A-B-C context of C") {
  // P(A) P(B|A) P(C|B): with C a leaf under B, context(C) = {B, C}
  std::vector<int> dom{2, 2, 2};
  std::vector<double> cpt{0.5, 0.5, 0.5, 0.5};
  BeliefNetwork net(dom, {Factor({0}, dom, {0.5, 0.5}), Factor({0, 1}, dom, cpt), Factor({1, 2}, dom, cpt)});
  PseudoTree t({kNoParent, 0, 1});
  ContextTable ctx = compute_contexts(t, primal_graph(net));
  CHECK(ctx.of(2) == std::vector<int>{1, 2});
  CHECK(ctx.of(1) == std::vector<int>{0, 1});
  CHECK(ctx.of(0) == std::vector<int>{0});
}

TEST_CASE("factors go to their deepest scope variable") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BeliefNetwork net = gen_random(10, 2, 8, 2, seed);
    Structure s = analyze(net, seed);
    std::vector<std::vector<int>> buckets = assign_factors(net, s.tree);
    std::vector<int> home = testsupport::factor_home(net, s.tree);
    std::size_t total = 0;
    for (int v = 0; v < net.num_variables(); ++v) {
      total += buckets[v].size();
      for (int f : buckets[v]) CHECK(home[f] == v);
    }
    CHECK(total == net.factors().size());
  }
}

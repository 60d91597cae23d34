// Test-only reference computations. These deliberately avoid the library's
// table and elimination code so they can serve as independent checks.

#ifndef AOSEARCH_TESTS_SUPPORT_H_
#define AOSEARCH_TESTS_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "aosearch/generators.h"
#include "aosearch/heuristics.h"
#include "aosearch/model.h"
#include "aosearch/oracle.h"
#include "aosearch/search.h"
#include "aosearch/solver.h"
#include "aosearch/structure.h"

namespace testsupport {

using namespace aosearch;

inline constexpr double kTol = 1e-9;

// Row-major index of a factor entry, last scope variable fastest.
inline std::size_t entry_index(const BeliefNetwork& net, const Factor& f, const Assignment& a) {
  std::size_t idx = 0;
  for (int v : f.scope()) idx = idx * static_cast<std::size_t>(net.domain_size(v)) + a[v];
  return idx;
}

// Product of linear entries, converted to log once at the end.
inline double log_product(const BeliefNetwork& net, const std::vector<std::size_t>& factors,
                          const Assignment& a) {
  double p = 1.0;
  for (std::size_t k : factors) p *= net.factors()[k].probabilities()[entry_index(net, net.factors()[k], a)];
  return std::log(p);
}

// Odometer over `vars`; returns false after the last combination.
inline bool advance(const BeliefNetwork& net, const std::vector<int>& vars, Assignment& a) {
  for (std::size_t k = vars.size(); k-- > 0;) {
    if (++a[vars[k]] < net.domain_size(vars[k])) return true;
    a[vars[k]] = 0;
  }
  return false;
}

// Each factor belongs to its scope variable lying deepest in the tree.
inline std::vector<int> factor_home(const BeliefNetwork& net, const PseudoTree& t) {
  std::vector<int> home;
  for (const Factor& f : net.factors()) {
    int best = f.scope().front();
    for (int v : f.scope())
      if (t.depth(v) > t.depth(best)) best = v;
    home.push_back(best);
  }
  return home;
}

inline std::vector<int> subtree_of(const PseudoTree& t, int root) {
  std::vector<int> out, stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int c : t.children(v)) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Exact value of the conditioned subproblem rooted at an OR node (var) or an
// AND node (var=value), given values for the node's ancestors in `path`.
// AND values exclude the weight of the arc into the AND node.
inline double exact_subproblem(const BeliefNetwork& net, const PseudoTree& t, const Assignment& path,
                               int var, int value = kUnassigned) {
  const std::vector<int> home = factor_home(net, t);
  std::vector<int> free = subtree_of(t, var);
  std::vector<std::size_t> factors;
  for (std::size_t k = 0; k < home.size(); ++k) {
    bool in_subtree = std::binary_search(free.begin(), free.end(), home[k]);
    if (in_subtree && !(value != kUnassigned && home[k] == var)) factors.push_back(k);
  }
  Assignment a = path;
  if (value != kUnassigned) {
    a[var] = value;
    free.erase(std::find(free.begin(), free.end(), var));
  }
  for (int v : free) a[v] = 0;
  double best = -INFINITY;
  do best = std::max(best, log_product(net, factors, a));
  while (advance(net, free, a));
  return best;
}

// Context straight from the definition: X plus those ancestors of X that are
// adjacent in the primal graph to X or to a descendant of X.
inline std::vector<int> definition_context(const BeliefNetwork& net, const PseudoTree& t, int x) {
  UndirectedGraph g(net.num_variables());
  for (const Factor& f : net.factors())
    for (int u : f.scope())
      for (int v : f.scope())
        if (u < v) g.add_edge(u, v);
  std::vector<int> below = subtree_of(t, x);
  std::set<int> ctx{x};
  for (int a = t.parent(x); a != kNoParent; a = t.parent(a))
    for (int d : below)
      if (g.has_edge(a, d)) ctx.insert(a);
  return {ctx.begin(), ctx.end()};
}

inline std::uint64_t context_size(const BeliefNetwork& net, const std::vector<int>& ctx) {
  std::uint64_t s = 1;
  for (int v : ctx) s *= static_cast<std::uint64_t>(net.domain_size(v));
  return s;
}

// Sum of arc weights along the solution: every factor counted once at its
// home variable, in linear space.
inline double solution_log_value(const BeliefNetwork& net, const Assignment& a) {
  std::vector<std::size_t> all(net.factors().size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return log_product(net, all, a) + net.log_constant();
}

// The 2-variable fixture: P(A) = (0.6, 0.4), P(B|A) rows (0.9, 0.1), (0.3, 0.7).
inline BeliefNetwork two_variable_net() {
  std::vector<int> dom{2, 2};
  std::vector<Factor> fs;
  fs.emplace_back(std::vector<int>{0}, dom, std::vector<double>{0.6, 0.4});
  fs.emplace_back(std::vector<int>{0, 1}, dom, std::vector<double>{0.9, 0.1, 0.3, 0.7});
  return BeliefNetwork(dom, std::move(fs));
}

}  // namespace testsupport

#endif  // AOSEARCH_TESTS_SUPPORT_H_

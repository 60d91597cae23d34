/*
 * heuristics.cpp
 */

#include "aosearch/heuristics.h"

#include <algorithm>
#include <numeric>

namespace aosearch {

std::vector<std::vector<int>> partition_bucket(std::span<const std::vector<int>* const> scopes,
                                               int i_bound) {
  std::vector<int> idx(scopes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return scopes[a]->size() > scopes[b]->size(); });

  std::vector<std::vector<int>> parts;
  std::vector<std::vector<int>> joint;  // sorted joint scope per mini-bucket
  std::vector<int> merged;
  for (int f : idx) {
    std::vector<int> s = *scopes[f];
    std::sort(s.begin(), s.end());
    bool placed = false;
    for (std::size_t k = 0; k < parts.size() && !placed; ++k) {
      merged.clear();
      std::set_union(joint[k].begin(), joint[k].end(), s.begin(), s.end(), std::back_inserter(merged));
      if (static_cast<int>(merged.size()) <= i_bound) {
        parts[k].push_back(f);
        joint[k] = merged;
        placed = true;
      }
    }
    if (!placed) {
      parts.push_back({f});
      joint.push_back(std::move(s));
    }
  }
  return parts;
}

namespace {

int earliest(std::span<const int> scope, std::span<const int> pos) {
  int best = kNoParent;
  for (int v : scope)
    if (best == kNoParent || pos[v] < pos[best]) best = v;
  return best;
}

// Size check ahead of combine_max.
std::size_t message_entries(std::span<const LogTable* const> parts, int var,
                            std::span<const int> domain_sizes) {
  std::vector<int> scope = scope_union(parts);
  std::erase(scope, var);
  return table_size(scope, domain_sizes);
}

void charge(std::size_t& used, std::size_t entries, std::size_t budget) {
  if (entries == SIZE_MAX || entries > (budget - used) / sizeof(double))
    throw MemoryLimitError("mini-bucket tables exceed the memory budget");
  used += entries * sizeof(double);
}

}  // namespace

MiniBucketTables compile_smb(const BeliefNetwork& net, const EliminationOrder& ord,
                             const PseudoTree& t, int i_bound, std::size_t memory_budget) {
  if (i_bound < 1) throw std::invalid_argument("i-bound must be at least 1");
  const int n = net.num_variables();
  const std::vector<int> pos = ord.positions();

  MiniBucketTables out;
  out.i_bound = i_bound;
  out.num_factors = net.factors().size();
  out.bucket_factors = assign_factors(net, t);
  out.buckets.assign(n, {});
  out.and_terms.assign(n, {});

  std::vector<std::vector<int>> contents = out.bucket_factors;
  for (int v = 0; v < n; ++v)
    for (int f : contents[v])
      if (earliest(net.factors()[f].scope(), pos) != v)
        throw std::invalid_argument("pseudo-tree does not match the elimination order");

  auto table_of = [&](int id) -> const LogTable& {
    return id < static_cast<int>(out.num_factors) ? net.factors()[id].log_table()
                                                  : out.messages[id - out.num_factors].table;
  };

  std::size_t used = 0;
  for (int v : ord.order) {
    std::vector<const std::vector<int>*> scopes;
    for (int id : contents[v]) scopes.push_back(&table_of(id).scope());
    for (const auto& part : partition_bucket(scopes, i_bound)) {
      std::vector<int> ids;
      std::vector<const LogTable*> tables;
      for (int k : part) {
        ids.push_back(contents[v][k]);
        tables.push_back(&table_of(contents[v][k]));
      }
      out.buckets[v].push_back(ids);

      std::size_t entries = message_entries(tables, v, net.domain_sizes());
      charge(used, entries, memory_budget);
      LogTable msg = combine_max(tables, v, net.domain_sizes());
      int dest = earliest(msg.scope(), pos);
      if (dest != kNoParent && !t.is_ancestor(dest, v))
        throw std::invalid_argument("pseudo-tree does not match the elimination order");

      int id = static_cast<int>(out.num_factors + out.messages.size());
      out.messages.push_back({std::move(msg), v, dest});
      if (dest != kNoParent) contents[dest].push_back(id);
      // the message bounds part of every subtree it crosses on its way up
      for (int x = t.parent(v); x != kNoParent; x = t.parent(x)) {
        out.and_terms[x].push_back(id - static_cast<int>(out.num_factors));
        if (x == dest) break;
      }
      out.table_entries += entries;
    }
  }
  return out;
}

StaticMiniBucket::StaticMiniBucket(const BeliefNetwork& net, MiniBucketTables tables)
    : net_(net), tables_(std::move(tables)) {}

double StaticMiniBucket::and_bound(int var, std::span<const int> assignment) const {
  double sum = 0.0;
  for (int m : tables_.and_terms[var]) sum += tables_.messages[m].table.at(assignment);
  return sum;
}

double StaticMiniBucket::or_bound(int var, std::span<int> assignment) const {
  const int saved = assignment[var];
  double best = kLogZero;
  for (int x = 0; x < net_.domain_size(var); ++x) {
    assignment[var] = x;
    double value = 0.0;
    for (int f : tables_.bucket_factors[var]) value += net_.factors()[f].log_value(assignment);
    if (value == kLogZero) continue;
    best = std::max(best, value + and_bound(var, assignment));
  }
  assignment[var] = saved;
  return best;
}

double StaticMiniBucket::root_bound(const PseudoTree& t) const {
  Assignment a(static_cast<std::size_t>(net_.num_variables()), kUnassigned);
  return or_bound(t.root(), a);
}

double compute_dmb(const BeliefNetwork& net, const EliminationOrder& ord, const PseudoTree& t,
                   int i_bound, std::span<const int> assignment, NodeRef node,
                   std::size_t memory_budget) {
  if (i_bound < 1) throw std::invalid_argument("i-bound must be at least 1");
  const int n = net.num_variables();
  const std::vector<int> pos = ord.positions();
  const auto bucket_factors = assign_factors(net, t);

  Assignment a(assignment.begin(), assignment.end());
  std::vector<char> eliminated(n, 0);
  for (int v : t.subtree(node.var)) {
    a[v] = kUnassigned;
    eliminated[v] = 1;
  }
  if (node.is_and()) {
    a[node.var] = node.value;
    eliminated[node.var] = 0;
  }

  double total = 0.0;
  std::vector<LogTable> functions;
  std::vector<std::vector<int>> contents(n);
  auto place = [&](LogTable table) {
    if (table.scope().empty()) {
      total += table.values()[0];
      return;
    }
    for (int v : table.scope())
      if (!eliminated[v]) throw std::invalid_argument("compute_dmb: unassigned ancestor in path");
    int dest = earliest(table.scope(), pos);
    contents[dest].push_back(static_cast<int>(functions.size()));
    functions.push_back(std::move(table));
  };

  for (int v = 0; v < n; ++v)
    if (eliminated[v])
      for (int f : bucket_factors[v]) place(net.factors()[f].log_table().slice(a, net.domain_sizes()));

  std::size_t used = 0;
  for (int v : ord.order) {
    if (!eliminated[v] || contents[v].empty()) continue;
    std::vector<const std::vector<int>*> scopes;
    for (int id : contents[v]) scopes.push_back(&functions[id].scope());
    for (const auto& part : partition_bucket(scopes, i_bound)) {
      std::vector<const LogTable*> tables;
      for (int k : part) tables.push_back(&functions[contents[v][k]]);
      charge(used, message_entries(tables, v, net.domain_sizes()), memory_budget);
      place(combine_max(tables, v, net.domain_sizes()));
    }
  }
  return total;
}

DynamicMiniBucket::DynamicMiniBucket(const BeliefNetwork& net, const EliminationOrder& ord,
                                     const PseudoTree& t, int i_bound, std::size_t memory_budget)
    : net_(net), ord_(ord), t_(t), i_bound_(i_bound), memory_budget_(memory_budget) {
  if (i_bound < 1) throw std::invalid_argument("i-bound must be at least 1");
}

double DynamicMiniBucket::and_bound(int var, std::span<const int> assignment) const {
  return compute_dmb(net_, ord_, t_, i_bound_, assignment, {var, assignment[var]}, memory_budget_);
}

double DynamicMiniBucket::or_bound(int var, std::span<int> assignment) const {
  return compute_dmb(net_, ord_, t_, i_bound_, assignment, {var}, memory_budget_);
}

double evaluate_h(const Heuristic& h, const PseudoTree& t, std::span<const int> assignment,
                  NodeRef node) {
  for (int a : t.ancestors(node.var))
    if (assignment[a] == kUnassigned)
      throw std::invalid_argument("evaluate_h: unassigned ancestor " + std::to_string(a));
  Assignment a(assignment.begin(), assignment.end());
  if (node.is_and()) {
    a[node.var] = node.value;
    return h.and_bound(node.var, a);
  }
  return h.or_bound(node.var, a);
}

}  // namespace aosearch

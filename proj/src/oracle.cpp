/*
 * oracle.cpp
 */

#include "aosearch/oracle.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace aosearch {

OracleResult enumerate_mpe(const BeliefNetwork& net, std::uint64_t cap) {
  const int n = net.num_variables();
  std::uint64_t total = 1;
  for (int v = 0; v < n; ++v) {
    total *= static_cast<std::uint64_t>(net.domain_size(v));
    if (total > cap) throw std::length_error("enumerate_mpe: joint space exceeds the cap");
  }

  OracleResult out;
  out.method = OracleMethod::Enumeration;
  Assignment x(static_cast<std::size_t>(n), 0);
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  out.assignment = x;
  bool first = true;
  do {
    double value = net.log_constant();
    for (const Factor& f : net.factors()) {
      value += f.log_value(x);
      if (value == kLogZero) break;
    }
    // strict improvement keeps the lexicographically smallest maximizer
    if (first || value > out.mpe_log_value) {
      out.mpe_log_value = value;
      out.assignment = x;
      first = false;
    }
  } while (next_assignment(vars, net.domain_sizes(), x));
  if (first) out.mpe_log_value = net.log_constant();
  return out;
}

OracleResult bucket_elimination_mpe(const BeliefNetwork& net, const EliminationOrder& ord,
                                    std::size_t memory_budget) {
  const int n = net.num_variables();
  std::vector<int> pos = ord.positions();
  std::vector<LogTable> functions;
  std::vector<std::vector<int>> bucket(n);
  double constant = net.log_constant();

  auto place = [&](LogTable table) {
    if (table.scope().empty()) {
      constant += table.values()[0];
      return;
    }
    int dest = *std::min_element(table.scope().begin(), table.scope().end(),
                                 [&](int a, int b) { return pos[a] < pos[b]; });
    bucket[dest].push_back(static_cast<int>(functions.size()));
    functions.push_back(std::move(table));
  };
  for (const Factor& f : net.factors()) place(f.log_table());

  std::size_t used = 0;
  for (int v : ord.order) {
    std::vector<const LogTable*> parts;
    for (int id : bucket[v]) parts.push_back(&functions[id]);
    if (parts.empty()) continue;
    std::vector<int> scope = scope_union(parts);
    std::erase(scope, v);
    std::size_t entries = table_size(scope, net.domain_sizes());
    if (entries == SIZE_MAX || entries > (memory_budget - used) / sizeof(double))
      throw MemoryLimitError("bucket elimination exceeds the memory budget");
    used += entries * sizeof(double);
    place(combine_max(parts, v, net.domain_sizes()));
  }

  OracleResult out;
  out.method = OracleMethod::BucketElimination;
  out.mpe_log_value = constant;
  out.assignment.assign(static_cast<std::size_t>(n), kUnassigned);
  // later-eliminated variables are fixed first; each bucket only mentions
  // its own variable and variables eliminated after it
  for (auto it = ord.order.rbegin(); it != ord.order.rend(); ++it) {
    int v = *it;
    double best = kLogZero;
    int arg = 0;
    for (int x = 0; x < net.domain_size(v); ++x) {
      out.assignment[v] = x;
      double sum = 0.0;
      for (int id : bucket[v]) sum += functions[id].at(out.assignment);
      if (sum > best) {
        best = sum;
        arg = x;
      }
    }
    out.assignment[v] = arg;
  }
  return out;
}

}  // namespace aosearch

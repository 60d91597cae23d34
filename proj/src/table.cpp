/*
 * table.cpp
 */

#include "aosearch/table.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aosearch {

std::size_t table_size(std::span<const int> scope, std::span<const int> domain_sizes) {
  std::size_t size = 1;
  for (int v : scope) {
    auto d = static_cast<std::size_t>(domain_sizes[v]);
    if (d != 0 && size > SIZE_MAX / d) return SIZE_MAX;
    size *= d;
  }
  return size;
}

LogTable::LogTable(std::vector<int> scope, std::span<const int> domain_sizes,
                   std::vector<double> values)
    : scope_(std::move(scope)), values_(std::move(values)) {
  cards_.reserve(scope_.size());
  for (int v : scope_) cards_.push_back(domain_sizes[v]);
  strides_.assign(scope_.size(), 1);
  std::size_t stride = 1;
  for (std::size_t k = scope_.size(); k-- > 0;) {
    strides_[k] = stride;
    stride *= static_cast<std::size_t>(cards_[k]);
  }
  if (stride != values_.size())
    throw std::invalid_argument("table length does not match scope cardinalities");
}

LogTable LogTable::constant(double log_value) {
  return LogTable({}, {}, std::vector<double>{log_value});
}

LogTable LogTable::slice(std::span<const int> assignment,
                         std::span<const int> domain_sizes) const {
  std::vector<int> free_vars;
  std::size_t base = 0;
  for (std::size_t k = 0; k < scope_.size(); ++k) {
    int value = assignment[scope_[k]];
    if (value == kUnassigned)
      free_vars.push_back(static_cast<int>(k));
    else
      base += static_cast<std::size_t>(value) * strides_[k];
  }
  if (free_vars.size() == scope_.size()) return *this;

  std::vector<int> out_scope;
  for (int k : free_vars) out_scope.push_back(scope_[k]);
  std::vector<double> out(table_size(out_scope, domain_sizes));
  std::vector<int> counter(free_vars.size(), 0);
  for (double& slot : out) {
    std::size_t idx = base;
    for (std::size_t j = 0; j < free_vars.size(); ++j)
      idx += static_cast<std::size_t>(counter[j]) * strides_[free_vars[j]];
    slot = values_[idx];
    for (std::size_t j = free_vars.size(); j-- > 0;) {
      if (++counter[j] < cards_[free_vars[j]]) break;
      counter[j] = 0;
    }
  }
  return LogTable(std::move(out_scope), domain_sizes, std::move(out));
}

double LogTable::max_value() const {
  return values_.empty() ? kLogZero : *std::max_element(values_.begin(), values_.end());
}

std::vector<int> scope_union(std::span<const LogTable* const> parts) {
  std::vector<int> out;
  for (const LogTable* t : parts) out.insert(out.end(), t->scope().begin(), t->scope().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool next_assignment(std::span<const int> vars, std::span<const int> domain_sizes,
                     std::span<int> assignment) {
  for (std::size_t k = vars.size(); k-- > 0;) {
    int v = vars[k];
    if (++assignment[v] < domain_sizes[v]) return true;
    assignment[v] = 0;
  }
  return false;
}

LogTable combine_max(std::span<const LogTable* const> parts, int var,
                     std::span<const int> domain_sizes) {
  std::vector<int> out_scope = scope_union(parts);
  if (var != kUnassigned) std::erase(out_scope, var);

  std::size_t out_size = table_size(out_scope, domain_sizes);
  if (out_size == SIZE_MAX) throw std::length_error("combined table too large");

  // scratch assignment wide enough for every scope variable
  int max_var = var;
  for (const LogTable* t : parts)
    for (int v : t->scope()) max_var = std::max(max_var, v);
  std::vector<int> scratch(static_cast<std::size_t>(max_var + 1), 0);

  std::vector<double> out(out_size, kLogZero);
  int var_card = var == kUnassigned ? 1 : domain_sizes[var];
  for (double& slot : out) {
    double best = kLogZero;
    for (int x = 0; x < var_card; ++x) {
      if (var != kUnassigned) scratch[var] = x;
      double sum = 0.0;
      for (const LogTable* t : parts) {
        sum += t->at(scratch);
        if (sum == kLogZero) break;
      }
      best = std::max(best, sum);
    }
    slot = best;
    next_assignment(out_scope, domain_sizes, scratch);
  }
  return LogTable(std::move(out_scope), domain_sizes, std::move(out));
}

bool log_equal(double a, double b, double tol) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= tol;
}

}  // namespace aosearch

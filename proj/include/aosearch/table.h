/*
 * table.h
 *
 * Log-space tables over finite-domain variables. All search, heuristic and
 * oracle arithmetic happens on these; -inf encodes probability zero.
 */

#ifndef AOSEARCH_TABLE_H_
#define AOSEARCH_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace aosearch {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();
inline constexpr int kUnassigned = -1;

/// Dense assignment indexed by variable id; kUnassigned marks free variables.
using Assignment = std::vector<int>;

// Product of cardinalities, or SIZE_MAX if it would overflow.
std::size_t table_size(std::span<const int> scope, std::span<const int> domain_sizes);

class LogTable {
 public:
  LogTable() = default;
  /// values are row-major over scope, last scope variable varying fastest.
  LogTable(std::vector<int> scope, std::span<const int> domain_sizes, std::vector<double> values);

  /// Constant (empty-scope) table.
  static LogTable constant(double log_value);

  const std::vector<int>& scope() const { return scope_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Value at a dense assignment; every scope variable must be assigned.
  double at(std::span<const int> assignment) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < scope_.size(); ++k)
      idx += static_cast<std::size_t>(assignment[scope_[k]]) * strides_[k];
    return values_[idx];
  }

  /// Restrict to the scope variables that are assigned in `assignment`.
  LogTable slice(std::span<const int> assignment, std::span<const int> domain_sizes) const;

  double max_value() const;

 private:
  std::vector<int> scope_;
  std::vector<int> cards_;
  std::vector<std::size_t> strides_;
  std::vector<double> values_;
};

/// max over `var` of the sum of `parts`. Output scope is the sorted union of
/// the parts' scopes without `var`. Pass var = kUnassigned to only combine.
LogTable combine_max(std::span<const LogTable* const> parts, int var,
                     std::span<const int> domain_sizes);

/// Sorted union of scopes.
std::vector<int> scope_union(std::span<const LogTable* const> parts);

/// Odometer step over `vars` in `assignment`, last variable fastest.
/// Returns false after wrapping around to all zeros.
bool next_assignment(std::span<const int> vars, std::span<const int> domain_sizes,
                     std::span<int> assignment);

/// Log-space equality that treats two -inf values as equal.
bool log_equal(double a, double b, double tol);

}  // namespace aosearch

#endif  // AOSEARCH_TABLE_H_

/*
 * model.h
 *
 * Belief networks: CPT factors over finite domains, the UAI BAYES text
 * format, evidence reduction and the primal (moral) graph.
 */

#ifndef AOSEARCH_MODEL_H_
#define AOSEARCH_MODEL_H_

#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aosearch/graph.h"
#include "aosearch/table.h"

namespace aosearch {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ModelError {
 public:
  ParseError(const std::string& what, int line)
      : ModelError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Observed values, var -> value.
using Evidence = std::map<int, int>;

/// A CPT P(child | parents). The scope lists the parents first and the child
/// last; probabilities are row-major over the scope.
class Factor {
 public:
  Factor(std::vector<int> scope, std::span<const int> domain_sizes,
         std::vector<double> probabilities);

  const std::vector<int>& scope() const { return table_.scope(); }
  int child() const { return table_.scope().back(); }
  const std::vector<double>& probabilities() const { return probabilities_; }
  const LogTable& log_table() const { return table_; }
  double log_value(std::span<const int> assignment) const { return table_.at(assignment); }

  bool operator==(const Factor& o) const {
    return scope() == o.scope() && probabilities_ == o.probabilities_;
  }

 private:
  std::vector<double> probabilities_;
  LogTable table_;
};

class BeliefNetwork {
 public:
  BeliefNetwork() = default;
  /// original_ids maps each variable to its id in the network evidence was
  /// applied to; defaults to the identity.
  BeliefNetwork(std::vector<int> domain_sizes, std::vector<Factor> factors,
                double log_constant = 0.0, std::vector<int> original_ids = {});

  int num_variables() const { return static_cast<int>(domain_sizes_.size()); }
  int domain_size(int v) const { return domain_sizes_[v]; }
  const std::vector<int>& domain_sizes() const { return domain_sizes_; }
  int max_domain_size() const;
  const std::vector<Factor>& factors() const { return factors_; }
  /// Log of the scalar folded in from fully-instantiated factors.
  double log_constant() const { return log_constant_; }
  const std::vector<int>& original_ids() const { return original_ids_; }

  /// Indices of factors whose rows do not sum to one.
  std::vector<std::size_t> unnormalized_factors(double tol = 1e-6) const;

  bool operator==(const BeliefNetwork&) const = default;

 private:
  std::vector<int> domain_sizes_;
  std::vector<Factor> factors_;
  double log_constant_ = 0.0;
  std::vector<int> original_ids_;
};

BeliefNetwork parse_uai(std::istream& in);
BeliefNetwork parse_uai_string(const std::string& text);
BeliefNetwork load_uai(const std::string& path);

/// Writes the UAI BAYES text. Numbers use the shortest round-trip decimal
/// form, so parse_uai(serialize_uai(net)) reproduces every entry exactly.
/// The folded evidence constant is not representable and is dropped.
std::string serialize_uai(const BeliefNetwork& net);

/// Evidence file: count c followed by c "var value" pairs.
Evidence parse_evidence(std::istream& in);
Evidence load_evidence(const std::string& path);
std::string serialize_evidence(const Evidence& e);

/// Slices every factor at the evidence, drops evidence variables and
/// renumbers the rest densely. Factors left without free variables are folded
/// into log_constant().
BeliefNetwork apply_evidence(const BeliefNetwork& net, const Evidence& e);

/// Moral graph: every factor scope becomes a clique.
UndirectedGraph primal_graph(const BeliefNetwork& net);

/// Sum of log entries selected by a total assignment, plus log_constant().
double log_probability(const BeliefNetwork& net, std::span<const int> assignment);

/// Lifts an assignment of a reduced network back to the original variable
/// ids, filling in the evidence values.
Assignment expand_assignment(const BeliefNetwork& reduced, std::span<const int> assignment,
                             const Evidence& e, int original_num_variables);

}  // namespace aosearch

#endif  // AOSEARCH_MODEL_H_

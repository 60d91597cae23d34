/*
 * model.cpp
 */

#include "aosearch/model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace aosearch {

namespace {

std::vector<double> to_log(const std::vector<double>& probs) {
  std::vector<double> out(probs.size());
  std::transform(probs.begin(), probs.end(), out.begin(),
                 [](double p) { return p > 0.0 ? std::log(p) : kLogZero; });
  return out;
}

// Whitespace tokenizer that remembers the line each token came from.
class TokenStream {
 public:
  explicit TokenStream(std::istream& in) : in_(in) {}

  bool next(std::string& token) {
    token.clear();
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '\n') {
        ++line_;
        if (!token.empty()) return true;
      } else if (std::isspace(c)) {
        if (!token.empty()) return true;
      } else {
        if (token.empty()) token_line_ = line_;
        token.push_back(static_cast<char>(c));
      }
    }
    return !token.empty();
  }

  int line() const { return token_line_; }
  int current_line() const { return line_; }

  long long integer(const char* what) {
    std::string tok;
    if (!next(tok)) throw ParseError(std::string("unexpected end of file, expected ") + what, line_);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(std::string("expected integer ") + what + ", got '" + tok + "'", token_line_);
    return value;
  }

 private:
  std::istream& in_;
  int line_ = 1;
  int token_line_ = 1;
};

}  // namespace

Factor::Factor(std::vector<int> scope, std::span<const int> domain_sizes,
               std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (scope.empty()) throw ModelError("factor scope must not be empty");
  table_ = LogTable(std::move(scope), domain_sizes, to_log(probabilities_));
}

BeliefNetwork::BeliefNetwork(std::vector<int> domain_sizes, std::vector<Factor> factors,
                             double log_constant, std::vector<int> original_ids)
    : domain_sizes_(std::move(domain_sizes)),
      factors_(std::move(factors)),
      log_constant_(log_constant),
      original_ids_(std::move(original_ids)) {
  for (int d : domain_sizes_)
    if (d < 1) throw ModelError("domain sizes must be positive");
  if (original_ids_.empty()) {
    original_ids_.resize(domain_sizes_.size());
    std::iota(original_ids_.begin(), original_ids_.end(), 0);
  }
  if (original_ids_.size() != domain_sizes_.size())
    throw ModelError("original id map has wrong length");
  for (const Factor& f : factors_) {
    for (int v : f.scope())
      if (v < 0 || v >= num_variables())
        throw ModelError("factor scope refers to undeclared variable " + std::to_string(v));
    if (f.probabilities().size() != table_size(f.scope(), domain_sizes_))
      throw ModelError("table length mismatch");
  }
}

int BeliefNetwork::max_domain_size() const {
  return domain_sizes_.empty() ? 1 : *std::max_element(domain_sizes_.begin(), domain_sizes_.end());
}

std::vector<std::size_t> BeliefNetwork::unnormalized_factors(double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const auto& probs = factors_[f].probabilities();
    auto child_card = static_cast<std::size_t>(domain_sizes_[factors_[f].child()]);
    for (std::size_t row = 0; row < probs.size(); row += child_card) {
      double sum = std::accumulate(probs.begin() + row, probs.begin() + row + child_card, 0.0);
      if (std::abs(sum - 1.0) > tol) {
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

BeliefNetwork parse_uai(std::istream& in) {
  TokenStream ts(in);
  std::string tok;
  if (!ts.next(tok)) throw ParseError("empty input", 1);
  if (tok != "BAYES") throw ParseError("malformed header: expected BAYES, got '" + tok + "'", ts.line());

  long long n = ts.integer("variable count");
  if (n < 0) throw ParseError("negative variable count", ts.line());
  std::vector<int> domains(static_cast<std::size_t>(n));
  for (auto& d : domains) {
    long long card = ts.integer("cardinality");
    if (card < 1) throw ParseError("cardinality must be positive", ts.line());
    d = static_cast<int>(card);
  }

  long long m = ts.integer("factor count");
  if (m < 0) throw ParseError("negative factor count", ts.line());
  std::vector<std::vector<int>> scopes(static_cast<std::size_t>(m));
  std::vector<int> scope_lines(scopes.size());
  for (std::size_t f = 0; f < scopes.size(); ++f) {
    long long k = ts.integer("scope size");
    scope_lines[f] = ts.line();
    if (k < 1) throw ParseError("scope size must be positive", ts.line());
    for (long long j = 0; j < k; ++j) {
      long long v = ts.integer("scope variable");
      if (v < 0 || v >= n) throw ParseError("scope variable out of range", ts.line());
      scopes[f].push_back(static_cast<int>(v));
    }
  }

  std::vector<Factor> factors;
  factors.reserve(scopes.size());
  for (std::size_t f = 0; f < scopes.size(); ++f) {
    long long count = ts.integer("table entry count");
    int count_line = ts.line();
    std::size_t expected = table_size(scopes[f], domains);
    if (count < 0 || static_cast<std::size_t>(count) != expected)
      throw ParseError("table length mismatch: scope needs " + std::to_string(expected) +
                           " entries, block declares " + std::to_string(count),
                       count_line);
    std::vector<double> probs(expected);
    for (double& p : probs) {
      if (!ts.next(tok))
        throw ParseError("table length mismatch: file ended inside table block", ts.current_line());
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), p);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("non-numeric entry '" + tok + "'", ts.line());
      if (p < 0.0 || std::isnan(p)) throw ParseError("negative table entry", ts.line());
    }
    factors.emplace_back(scopes[f], domains, std::move(probs));
  }
  if (ts.next(tok)) throw ParseError("trailing data '" + tok + "'", ts.line());
  return BeliefNetwork(std::move(domains), std::move(factors));
}

BeliefNetwork parse_uai_string(const std::string& text) {
  std::istringstream in(text);
  return parse_uai(in);
}

BeliefNetwork load_uai(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open " + path);
  return parse_uai(in);
}

namespace {

void append_number(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace

std::string serialize_uai(const BeliefNetwork& net) {
  std::string out = "BAYES\n";
  out += std::to_string(net.num_variables()) + "\n";
  for (int v = 0; v < net.num_variables(); ++v) {
    if (v) out += ' ';
    out += std::to_string(net.domain_size(v));
  }
  out += "\n" + std::to_string(net.factors().size()) + "\n";
  for (const Factor& f : net.factors()) {
    out += std::to_string(f.scope().size());
    for (int v : f.scope()) out += " " + std::to_string(v);
    out += '\n';
  }
  for (const Factor& f : net.factors()) {
    out += "\n" + std::to_string(f.probabilities().size()) + "\n";
    const auto& probs = f.probabilities();
    auto row = static_cast<std::size_t>(net.domain_size(f.child()));
    for (std::size_t k = 0; k < probs.size(); ++k) {
      append_number(out, probs[k]);
      out += (k + 1) % row == 0 ? '\n' : ' ';
    }
  }
  return out;
}

Evidence parse_evidence(std::istream& in) {
  TokenStream ts(in);
  Evidence e;
  std::string tok;
  // an empty evidence file means no evidence
  if (in.peek() == EOF) return e;
  long long count = ts.integer("evidence count");
  for (long long k = 0; k < count; ++k) {
    long long var = ts.integer("evidence variable");
    long long val = ts.integer("evidence value");
    e[static_cast<int>(var)] = static_cast<int>(val);
  }
  return e;
}

Evidence load_evidence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open " + path);
  return parse_evidence(in);
}

std::string serialize_evidence(const Evidence& e) {
  std::string out = std::to_string(e.size());
  for (const auto& [var, val] : e) out += " " + std::to_string(var) + " " + std::to_string(val);
  return out + "\n";
}

BeliefNetwork apply_evidence(const BeliefNetwork& net, const Evidence& e) {
  if (e.empty()) return net;
  Assignment observed(static_cast<std::size_t>(net.num_variables()), kUnassigned);
  for (const auto& [var, val] : e) {
    if (var < 0 || var >= net.num_variables())
      throw ModelError("evidence on unknown variable " + std::to_string(var));
    if (val < 0 || val >= net.domain_size(var))
      throw ModelError("evidence value out of domain for variable " + std::to_string(var));
    observed[var] = val;
  }

  std::vector<int> new_id(observed.size(), -1);
  std::vector<int> domains, original;
  for (int v = 0; v < net.num_variables(); ++v) {
    if (observed[v] != kUnassigned) continue;
    new_id[v] = static_cast<int>(domains.size());
    domains.push_back(net.domain_size(v));
    original.push_back(net.original_ids()[v]);
  }

  double log_constant = net.log_constant();
  std::vector<Factor> factors;
  for (const Factor& f : net.factors()) {
    LogTable sliced = f.log_table().slice(observed, net.domain_sizes());
    if (sliced.scope().empty()) {
      log_constant += sliced.values()[0];
      continue;
    }
    // keep linear entries exact rather than exp(log(p))
    std::vector<double> probs;
    if (sliced.scope().size() == f.scope().size()) {
      probs = f.probabilities();
    } else {
      // re-slice the linear table the same way
      Assignment scratch = observed;
      std::vector<int> free_vars = sliced.scope();
      for (int v : free_vars) scratch[v] = 0;
      std::vector<std::size_t> strides(f.scope().size(), 1);
      for (std::size_t k = f.scope().size() - 1; k-- > 0;)
        strides[k] = strides[k + 1] * static_cast<std::size_t>(net.domain_size(f.scope()[k + 1]));
      do {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < f.scope().size(); ++k)
          idx += static_cast<std::size_t>(scratch[f.scope()[k]]) * strides[k];
        probs.push_back(f.probabilities()[idx]);
      } while (next_assignment(free_vars, net.domain_sizes(), scratch));
    }
    std::vector<int> scope;
    for (int v : sliced.scope()) scope.push_back(new_id[v]);
    factors.emplace_back(std::move(scope), domains, std::move(probs));
  }
  return BeliefNetwork(std::move(domains), std::move(factors), log_constant, std::move(original));
}

UndirectedGraph primal_graph(const BeliefNetwork& net) {
  UndirectedGraph g(net.num_variables());
  for (const Factor& f : net.factors())
    for (std::size_t a = 0; a < f.scope().size(); ++a)
      for (std::size_t b = a + 1; b < f.scope().size(); ++b) g.add_edge(f.scope()[a], f.scope()[b]);
  return g;
}

double log_probability(const BeliefNetwork& net, std::span<const int> assignment) {
  if (assignment.size() != static_cast<std::size_t>(net.num_variables()))
    throw ModelError("assignment has wrong length");
  for (int v = 0; v < net.num_variables(); ++v)
    if (assignment[v] < 0 || assignment[v] >= net.domain_size(v))
      throw ModelError("log_probability needs a total assignment");
  double sum = net.log_constant();
  for (const Factor& f : net.factors()) sum += f.log_value(assignment);
  return sum;
}

Assignment expand_assignment(const BeliefNetwork& reduced, std::span<const int> assignment,
                             const Evidence& e, int original_num_variables) {
  Assignment out(static_cast<std::size_t>(original_num_variables), kUnassigned);
  for (const auto& [var, val] : e) out[var] = val;
  for (int v = 0; v < reduced.num_variables(); ++v) out[reduced.original_ids()[v]] = assignment[v];
  return out;
}

}  // namespace aosearch

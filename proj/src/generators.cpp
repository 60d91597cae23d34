/*
 * generators.cpp
 */

#include "aosearch/generators.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace aosearch {

namespace {

// One Dirichlet(1) row: normalized unit exponentials.
void dirichlet_row(std::mt19937_64& rng, std::span<double> row) {
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (double& p : row) total += (p = expo(rng));
  for (double& p : row) p /= total;
}

std::vector<double> dirichlet_cpt(std::mt19937_64& rng, std::size_t rows, int child_card) {
  std::vector<double> table(rows * static_cast<std::size_t>(child_card));
  for (std::size_t r = 0; r < rows; ++r)
    dirichlet_row(rng, std::span<double>(table).subspan(r * child_card, child_card));
  return table;
}

std::vector<int> sample_without_replacement(std::mt19937_64& rng, int population, int k) {
  std::vector<int> all(static_cast<std::size_t>(population));
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, population - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(static_cast<std::size_t>(k));
  return all;
}

}  // namespace

BeliefNetwork gen_random(int n, int d, int c, int p, std::uint64_t seed) {
  if (n < 1 || d < 1) throw GeneratorError("gen_random: need n >= 1 and d >= 1");
  if (p < 0 || p >= n) throw GeneratorError("gen_random: need 0 <= p < n");
  if (c < 0 || c > n - p) throw GeneratorError("gen_random: need 0 <= c <= n - p");
  std::mt19937_64 rng(seed);

  // topo[k] is the variable at position k of the topological order
  std::vector<int> topo = sample_without_replacement(rng, n, n);
  // the first p positions cannot have p predecessors
  std::vector<int> with_cpt = sample_without_replacement(rng, n - p, c);
  std::vector<char> has_cpt(n, 0);
  for (int k : with_cpt) has_cpt[k + p] = 1;

  std::vector<int> domains(static_cast<std::size_t>(n), d);
  std::vector<std::vector<int>> scopes(n);
  std::vector<char> random_cpt(n, 0);
  for (int k = 0; k < n; ++k) {
    int child = topo[k];
    random_cpt[child] = has_cpt[k];
    if (has_cpt[k]) {
      for (int j : sample_without_replacement(rng, k, p)) scopes[child].push_back(topo[j]);
      std::sort(scopes[child].begin(), scopes[child].end());
    }
    scopes[child].push_back(child);
  }

  std::vector<Factor> factors;
  factors.reserve(n);
  for (int v = 0; v < n; ++v) {
    std::size_t rows = table_size(scopes[v], domains) / static_cast<std::size_t>(d);
    std::vector<double> table = random_cpt[v]
                                    ? dirichlet_cpt(rng, rows, d)
                                    : std::vector<double>(static_cast<std::size_t>(d), 1.0 / d);
    factors.emplace_back(scopes[v], domains, std::move(table));
  }
  return BeliefNetwork(std::move(domains), std::move(factors));
}

GridInstance gen_grid(int side, double det_fraction, int num_evidence, std::uint64_t seed) {
  if (side < 2) throw GeneratorError("gen_grid: need side >= 2");
  if (!(det_fraction >= 0.0 && det_fraction <= 1.0))
    throw GeneratorError("gen_grid: det_fraction must lie in [0, 1]");
  const int n = side * side;
  if (num_evidence < 0 || num_evidence > n) throw GeneratorError("gen_grid: bad evidence count");
  std::mt19937_64 rng(seed);

  std::vector<int> domains(static_cast<std::size_t>(n), 2);
  int num_det = static_cast<int>(std::lround(det_fraction * n));
  std::vector<char> deterministic(n, 0);
  for (int v : sample_without_replacement(rng, n, num_det)) deterministic[v] = 1;

  std::vector<Factor> factors;
  factors.reserve(n);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      int v = r * side + c;
      std::vector<int> scope;
      if (r > 0) scope.push_back(v - side);
      if (c > 0) scope.push_back(v - 1);
      scope.push_back(v);
      std::size_t rows = std::size_t{1} << (scope.size() - 1);
      std::vector<double> table;
      if (deterministic[v]) {
        table.assign(rows * 2, 0.0);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t row = 0; row < rows; ++row) table[row * 2 + (coin(rng) ? 1 : 0)] = 1.0;
      } else {
        table = dirichlet_cpt(rng, rows, 2);
      }
      factors.emplace_back(std::move(scope), domains, std::move(table));
    }
  }
  BeliefNetwork net(domains, std::move(factors));

  // forward sample in row-major order (parents precede children)
  Assignment sample(static_cast<std::size_t>(n), 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int v = 0; v < n; ++v) {
    const Factor& f = net.factors()[v];
    std::size_t row = 0;
    for (std::size_t k = 0; k + 1 < f.scope().size(); ++k) row = row * 2 + sample[f.scope()[k]];
    double p1 = f.probabilities()[row * 2 + 1];
    sample[v] = unit(rng) < p1 ? 1 : 0;
    if (f.probabilities()[row * 2 + sample[v]] == 0.0) sample[v] ^= 1;
  }
  Evidence evidence;
  for (int v : sample_without_replacement(rng, n, num_evidence)) evidence[v] = sample[v];
  return {std::move(net), std::move(evidence)};
}

CodingInstance gen_coding(int n, int p, double sigma2, std::uint64_t seed) {
  if (n < 1 || p < 1 || p > n) throw GeneratorError("gen_coding: need n >= p >= 1");
  if (!(sigma2 > 0.0)) throw GeneratorError("gen_coding: sigma2 must be positive");
  std::mt19937_64 rng(seed);

  std::vector<int> domains(static_cast<std::size_t>(2 * n), 2);
  std::vector<Factor> factors;
  for (int u = 0; u < n; ++u) factors.emplace_back(std::vector<int>{u}, domains, std::vector<double>{0.5, 0.5});

  std::vector<std::vector<int>> parents(n);
  for (int j = 0; j < n; ++j) {
    parents[j] = sample_without_replacement(rng, n, p);
    std::sort(parents[j].begin(), parents[j].end());
    std::vector<int> scope = parents[j];
    scope.push_back(n + j);
    std::size_t rows = std::size_t{1} << p;
    std::vector<double> table(rows * 2, 0.0);
    for (std::size_t row = 0; row < rows; ++row) {
      int parity = std::popcount(row) & 1;
      table[row * 2 + parity] = 1.0;
    }
    factors.emplace_back(std::move(scope), domains, std::move(table));
  }

  CodingInstance out;
  std::bernoulli_distribution coin(0.5);
  out.sent.resize(static_cast<std::size_t>(2 * n));
  for (int u = 0; u < n; ++u) out.sent[u] = coin(rng) ? 1 : 0;
  for (int j = 0; j < n; ++j) {
    int parity = 0;
    for (int u : parents[j]) parity ^= out.sent[u];
    out.sent[n + j] = parity;
  }

  std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * sigma2);
  for (int b = 0; b < 2 * n; ++b) {
    double y = out.sent[b] + noise(rng);
    out.received.push_back(y);
    std::vector<double> likelihood(2);
    for (int bit = 0; bit < 2; ++bit)
      likelihood[bit] = std::exp(-(y - bit) * (y - bit) / (2.0 * sigma2) + log_norm);
    factors.emplace_back(std::vector<int>{b}, domains, std::move(likelihood));
  }
  out.network = BeliefNetwork(std::move(domains), std::move(factors));
  return out;
}

}  // namespace aosearch

/*
 * generators.h
 *
 * Seeded benchmark families: random (n, d, c, p) networks, grid networks
 * with a share of deterministic CPTs, and linear block code networks.
 */

#ifndef AOSEARCH_GENERATORS_H_
#define AOSEARCH_GENERATORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aosearch/model.h"

namespace aosearch {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n variables with domain size d. c of them, chosen uniformly, get a CPT
/// with p parents drawn from the variables before them in a random
/// topological order; the others get uniform priors. CPT rows are
/// Dirichlet(1) draws. Requires c <= n - p so every CPT child has p
/// predecessors.
BeliefNetwork gen_random(int n, int d, int c, int p, std::uint64_t seed);

struct GridInstance {
  BeliefNetwork network;
  Evidence evidence;
};

/// side x side binary grid; variable r*side + c conditions on its left and
/// upper neighbours. round(det_fraction * side^2) CPTs, chosen uniformly,
/// are deterministic. Evidence values come from a forward sample, so the
/// evidence always has positive probability.
GridInstance gen_grid(int side, double det_fraction, int num_evidence, std::uint64_t seed);

struct CodingInstance {
  BeliefNetwork network;
  /// The transmitted word: input bits then parity bits.
  std::vector<int> sent;
  /// Channel outputs, one per transmitted bit.
  std::vector<double> received;
};

/// n input bits with uniform priors, n parity bits each the XOR of p input
/// bits, and one unary Gaussian likelihood factor per transmitted bit from a
/// simulated noisy transmission with variance sigma2.
CodingInstance gen_coding(int n, int p, double sigma2, std::uint64_t seed);

}  // namespace aosearch

#endif  // AOSEARCH_GENERATORS_H_

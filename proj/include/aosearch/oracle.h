/*
 * oracle.h
 *
 * Exact MPE by exhaustive enumeration and by bucket elimination. These are
 * the reference answers the searches are checked against.
 */

#ifndef AOSEARCH_ORACLE_H_
#define AOSEARCH_ORACLE_H_

#include <cstddef>
#include <cstdint>

#include "aosearch/heuristics.h"
#include "aosearch/model.h"
#include "aosearch/structure.h"

namespace aosearch {

enum class OracleMethod { Enumeration, BucketElimination };

struct OracleResult {
  double mpe_log_value = kLogZero;  // includes the network's log constant
  Assignment assignment;
  OracleMethod method = OracleMethod::Enumeration;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

/// Full enumeration; ties go to the lexicographically smallest assignment
/// (variable 0 most significant). Throws std::length_error past the cap.
OracleResult enumerate_mpe(const BeliefNetwork& net, std::uint64_t cap = kDefaultEnumerationCap);

/// Max-product variable elimination along ord, then argmax
/// back-substitution in reverse order (smallest value on ties).
OracleResult bucket_elimination_mpe(const BeliefNetwork& net, const EliminationOrder& ord,
                                    std::size_t memory_budget = kUnlimitedMemory);

}  // namespace aosearch

#endif  // AOSEARCH_ORACLE_H_

#pragma once

#include <cstdint>

#include "condlab/oracle.hpp"

namespace condlab {

enum class Verdict { Accept, Reject };

/// One random coin per element; the within [n] that came up heads.
IndexSet random_half_set(uint32_t n, Rng& rng);

/// Two-query equivalence test: draws two random half-sets and accepts iff
/// both masses agree exactly across the distributions.  One-sided: always
/// accepts when D = D'.
Verdict test_equivalence(OracleSession& d, OracleSession& d_prime, Rng& rng);

/// Two-query m-grainedness test: accepts iff m*D(S) is an integer for both
/// drawn half-sets.
Verdict test_grained(OracleSession& d, const mpz_class& m, Rng& rng);

struct L2Report {
  double estimate = 0.0;
  Rational exact;     // mean of the per-repetition X values
  uint64_t repetitions = 0;
  uint64_t queries = 0;  // set_eval count: 2 per repetition (1 with the complement trick)
};

/// Sign-sketch estimate of sum_j D(j)^2: per repetition a fresh 4-wise sign
/// hash splits [n] into S+/S-, X = (D(S+) - D(S-))^2 computed exactly, and
/// the mean over ceil(4/eps^2) repetitions is returned.
/// optimize_complement derives D(S-) as 1 - D(S+), halving the query count.
L2Report estimate_l2_squared(OracleSession& d, double eps, Rng& rng,
                             bool optimize_complement = false);

/// Exact sum of squared masses (test/report helper, not an oracle algorithm).
Rational l2_squared_exact(const DiscreteDistribution& d);

}  // namespace condlab

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "condlab/hash.hpp"
#include "condlab/oracle.hpp"

namespace condlab {

/// Answers "does S & the support?".  The session-backed probe spends
/// one cond query per call (Failure means empty intersection).
class EmptinessProbe {
 public:
  virtual ~EmptinessProbe() = default;
  virtual bool nonempty(const IndexSet& s) = 0;
};

/// Returns an element of S & supp(D), or nullopt when the intersection is
/// empty.  One cond query per call for the session-backed probe.
class SamplingProbe {
 public:
  virtual ~SamplingProbe() = default;
  virtual std::optional<uint32_t> sample(const IndexSet& s) = 0;
};

bool has_support_intersection(OracleSession& session, const IndexSet& s);

struct EnumerationResult {
  bool more_than;               // |S & supp| > d
  std::vector<uint32_t> members;  // exact intersection when !more_than
  uint64_t queries;             // <= d + 1
};

/// Claim-style bounded enumeration: repeatedly sample and remove until
/// failure or d+1 elements seen.
EnumerationResult enumerate_up_to(SamplingProbe& probe, const IndexSet& s, uint64_t d);
EnumerationResult enumerate_up_to(OracleSession& session, const IndexSet& s, uint64_t d);

struct EstimatorReport {
  double estimate = 0.0;
  uint32_t t_prime = 0;
  std::optional<uint32_t> t_star;
  std::optional<uint64_t> exact_count;  // r with estimate = r * 2^t_star
  uint64_t probe_queries = 0;           // emptiness probes (constant phase)
  uint64_t descent_queries = 0;         // sampling probes after t'
  bool guardrail_abort = false;         // descent budget exhausted
};

inline constexpr uint64_t kEpsEstimatorC = 576;

/// Constant-factor (4*sqrt(2)) support-size estimate via binary search for
/// the first empty hash-preimage level; n must be a power of two.
/// Uses at most ceil(log2(log2 n + 1)) emptiness probes.
EstimatorReport estimate_support_constant(uint32_t n, EmptinessProbe& probe, Rng& rng);
EstimatorReport estimate_support_constant(OracleSession& session, Rng& rng);

/// (1+eps) estimate: descends from t' enumerating preimage levels until the
/// level count exceeds c/eps^2; returns r*2^{t*}.  eps in (0, 1].
EstimatorReport estimate_support_eps(uint32_t n, double eps, EmptinessProbe& eprobe,
                                     SamplingProbe& sprobe, Rng& rng);
EstimatorReport estimate_support_eps(OracleSession& session, double eps, Rng& rng);

/// Constant-factor estimator driven entirely by size-k bounded cond queries
/// (each emptiness probe splits into ceil(|S|/k) blocks; see adapters).
EstimatorReport estimate_support_constant_bounded(OracleSession& session, uint32_t k, Rng& rng);

}  // namespace condlab

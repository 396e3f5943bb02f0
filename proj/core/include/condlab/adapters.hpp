#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "condlab/oracle.hpp"

namespace condlab {

inline constexpr uint32_t kLaminarOuterCap = 20;  // 2^t blow-up guard

/// Pairwise-disjoint refinement cells of `base` under the sign patterns of
/// the prior sets: base & C_1 & ... & C_m with C_j in {A_j, A_j^c}.  Empty
/// cells are pruned before they are ever queried.
std::vector<IndexSet> atom_partition(const IndexSet& base, const std::vector<IndexSet>& priors);

struct AdapterTranscript {
  std::vector<IndexSet> inner_sets;                   // every inner query, in order
  std::vector<std::pair<IndexSet, Rational>> outer;   // outer set and reconstructed D(A)
  uint64_t inner_queries = 0;
  bool repeated_outer_set = false;

  /// Every pair of inner sets nested or disjoint.
  bool laminar() const;
};

// ---- SET-EVAL laminarization -------------------------------------------

class SetEvalOracleRef {
 public:
  virtual ~SetEvalOracleRef() = default;
  virtual Rational query(const IndexSet& s) = 0;
};

using SetEvalAlgorithm = std::function<double(SetEvalOracleRef&, Rng&)>;

struct SetEvalRun {
  double output = 0.0;
  AdapterTranscript transcript;
};

/// Runs the algorithm against the session directly (transcript records the
/// queries as both inner and outer).
SetEvalRun run_set_eval_direct(const SetEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng);

/// Runs the algorithm behind the laminarizing simulator: each answer is
/// reconstructed as a sum of atom masses, at most 2^t inner queries total.
/// A repeat of an earlier outer set is answered from cache (no inner query)
/// and flagged in the transcript.
SetEvalRun laminarize_set_eval(const SetEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng);

// ---- COND-EVAL laminarization ------------------------------------------

struct CondEvalAnswer {
  bool failed = false;
  uint32_t element = 0;
  Rational p;   // D(element)
  Rational cp;  // D(element)/D(S)
};

class CondEvalOracleRef {
 public:
  virtual ~CondEvalOracleRef() = default;
  virtual CondEvalAnswer query(const IndexSet& s) = 0;
};

using CondEvalAlgorithm = std::function<double(CondEvalOracleRef&, Rng&)>;

struct CondEvalRun {
  double output = 0.0;
  AdapterTranscript transcript;
  std::vector<CondEvalAnswer> answers;  // emitted outer answers, in order
};

CondEvalRun run_cond_eval_direct(const CondEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng);

/// Laminarizing simulator for COND-EVAL algorithms.  Atoms additionally
/// exclude all previously sampled elements, whose masses are already known;
/// the emitted element is drawn over atoms and known singletons with exact
/// probability D(U)/D(A).  Repeated outer sets are re-queried fresh (the
/// answer must be an independent sample) and flagged.
CondEvalRun laminarize_cond_eval(const CondEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng);

// ---- bounded-set simulation --------------------------------------------

/// COND-EVAL on an arbitrary S through ceil(|S|/k) size-k COND-EVAL queries:
/// query every block, pick block i with probability D(S_i)/D(S), re-emit its
/// element with the full-set conditional probability.
OracleResponse simulate_bounded_cond_eval(OracleSession& session, const IndexSet& s, uint32_t k,
                                          Rng& rng);

/// Consecutive size-<=k blocks of S, in order.
std::vector<IndexSet> partition_blocks(const IndexSet& s, uint32_t k);

/// Emptiness of an arbitrary S via ceil(|S|/k) size-k cond queries; true iff
/// some block intersects the support (early exit on the first hit).
bool split_emptiness(OracleSession& session, const IndexSet& s, uint32_t k);

}  // namespace condlab

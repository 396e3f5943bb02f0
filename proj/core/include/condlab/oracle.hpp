#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "condlab/distribution.hpp"

namespace condlab {

// Oracle answer shapes.  Failure is a normal response value (the queried set
// had zero mass); it never terminates an algorithm.  Usage errors (index out
// of range, oversized bounded set) throw instead.
struct Sample {
  uint32_t j;
};
struct SamplePr {
  uint32_t j;
  Rational p;  // D(j)
};
struct SampleEval {
  uint32_t j;
  Rational p;   // D(j)
  Rational cp;  // D(j)/D(S)
};
struct SetMass {
  Rational q;  // D(S)
};
struct Failure {};

using OracleResponse = std::variant<Sample, SamplePr, SampleEval, SetMass, Failure>;

inline bool is_failure(const OracleResponse& r) { return std::holds_alternative<Failure>(r); }

enum class OracleKind { Samp, Cond, CondPr, CondEval, SetEval };

const char* oracle_kind_name(OracleKind k);
std::optional<OracleKind> parse_oracle_kind(const std::string& name);

/// Exact per-kind call counts; the artifact's unit of cost.
struct QueryLedger {
  uint64_t samp = 0;
  uint64_t cond = 0;
  uint64_t cond_pr = 0;
  uint64_t cond_eval = 0;
  uint64_t set_eval = 0;
  std::map<uint32_t, uint64_t> bounded;  // keyed by the size bound k

  uint64_t total() const;
  uint64_t bounded_total() const;
  friend QueryLedger operator-(QueryLedger a, const QueryLedger& b);
};

/// Single-owner handle: one distribution, one ledger, one random source.
/// The distribution is never mutated by queries.
class OracleSession {
 public:
  OracleSession(const DiscreteDistribution& dist, uint64_t seed) : dist_(dist), rng_(seed) {}
  OracleSession(const DiscreteDistribution& dist, Rng rng) : dist_(dist), rng_(std::move(rng)) {}

  const DiscreteDistribution& dist() const { return dist_; }
  const QueryLedger& ledger() const { return ledger_; }
  Rng& rng() { return rng_; }

  OracleResponse samp();
  OracleResponse cond(const IndexSet& s);
  OracleResponse cond_pr(const IndexSet& s);
  OracleResponse cond_eval(const IndexSet& s);
  OracleResponse set_eval(const IndexSet& s);

  /// Size-k bounded variant; |S| > k is a usage error, not a Failure.
  OracleResponse bounded(OracleKind kind, const IndexSet& s, uint32_t k);

 private:
  const DiscreteDistribution& dist_;
  QueryLedger ledger_;
  Rng rng_;
};

}  // namespace condlab

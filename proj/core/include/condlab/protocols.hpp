#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "condlab/adapters.hpp"
#include "condlab/oracle.hpp"

namespace condlab {

/// 1-based position of j in ascending order of S.
size_t rank_in_set(const IndexSet& s, uint32_t j);

/// The three probability shapes a geometric hard instance can reveal.
enum class PClass : uint8_t {
  Zero = 0b00,             // failure step
  HalfPow = 0b01,          // p = 1/2^z
  HalfPowMinusOne = 0b10,  // p = 1/2^(z-1)
};

/// Alternating payload/framing bit string: odd positions carry block bits,
/// each even position is 0 except at a block boundary.
class BitMessage {
 public:
  void push_payload(bool bit) { bits_.push_back(bit ? 1 : 0); }
  size_t size() const { return bits_.size(); }
  uint8_t operator[](size_t i) const { return bits_[i]; }
  void flip(size_t i) { bits_[i] ^= 1; }
  std::string str() const;

  std::vector<uint8_t> bits_;
};

/// Rank/probability block: rank-1 in ceil(log2 rank) bits (none for rank 1,
/// MSB first) followed by the 2-bit class.
std::vector<uint8_t> encode_block(uint64_t rank, PClass p_class);

struct TranscriptStep {
  IndexSet set;
  bool failed = false;
  uint32_t element = 0;  // valid when !failed
  Rational p;            // D(element); zero on failure
};

struct Transcript {
  std::vector<TranscriptStep> steps;
  uint64_t shared_seed = 0;
};

struct CondPrAnswer {
  bool failed = false;
  uint32_t element = 0;
  Rational p;
};

class CondPrOracleRef {
 public:
  virtual ~CondPrOracleRef() = default;
  virtual CondPrAnswer query(const IndexSet& s) = 0;
};

/// Deterministic algorithm closure over (oracle, shared randomness); the
/// return value is its support-size estimate.
using CondPrAlgorithm = std::function<double(CondPrOracleRef&, Rng&)>;

struct CondPrRun {
  double output = 0.0;
  Transcript transcript;
};

/// Alice's side: run against the real oracle, recording every step.
CondPrRun run_cond_pr_recorded(const CondPrAlgorithm& algo, OracleSession& session,
                               uint64_t shared_seed);

/// Interleaved message for a recorded run; |M| = 2 * sum(ceil(log2 rank)+2).
/// Throws if some revealed probability is outside the three-class alphabet.
BitMessage encode_run(const Transcript& transcript);

struct DecodedRun {
  double output = 0.0;
  Transcript transcript;
};

/// Bob's side: replay the algorithm from the message alone, reconstructing
/// each (set, element, probability) step.  Throws on malformed framing.
DecodedRun decode_run(const BitMessage& message, const CondPrAlgorithm& algo, uint64_t shared_seed);

/// Constant-factor support estimator expressed as a COND-PR algorithm
/// (emptiness probe per binary-search level); the canonical Alice algorithm.
CondPrAlgorithm support_estimator_algorithm(uint32_t n);

struct GuessingStats {
  size_t trials = 0;
  size_t correct_guesses = 0;
  size_t round_trip_failures = 0;
  uint64_t total_steps = 0;
  uint64_t sampled_steps = 0;
  double sum_rank = 0.0;
  double sum_rank_sq = 0.0;
  size_t msg_within_16t = 0;
  uint64_t total_msg_bits = 0;

  double mean_rank() const { return sampled_steps ? sum_rank / sampled_steps : 0.0; }
  double mean_rank_sq() const { return sampled_steps ? sum_rank_sq / sampled_steps : 0.0; }
  double frac_msg_le_16t() const { return trials ? double(msg_within_16t) / trials : 0.0; }
  double accuracy() const { return trials ? double(correct_guesses) / trials : 0.0; }
};

struct GuessingTrialRow {
  uint32_t x = 0;
  uint32_t guess = 0;
  uint64_t steps = 0;
  uint64_t msg_bits = 0;
  bool round_trip_ok = false;
};

/// The integer-guessing game: x uniform in [log2 n], Alice runs the
/// algorithm on geometric_hard(n, x) and sends the encoded run, Bob decodes
/// and guesses x from the replayed estimate.
GuessingStats run_integer_guessing(uint32_t n, size_t trials, const CondPrAlgorithm& algo,
                                   uint64_t root_seed,
                                   std::vector<GuessingTrialRow>* rows = nullptr);

// ---- Gap-Hamming two-party reduction -------------------------------------

/// COND-EVAL oracle realized by the Alice/Bob exchange over the gap-Hamming
/// instance; every transmitted element or count is charged ceil(log2 n)
/// bits, each membership flag one bit.
class TwoPartyCondEval final : public CondEvalOracleRef {
 public:
  TwoPartyCondEval(const std::vector<uint8_t>& x_bits, const std::vector<uint8_t>& y_bits,
                   uint64_t seed);

  CondEvalAnswer query(const IndexSet& s) override;

  uint64_t bits_communicated() const { return bits_; }
  uint64_t queries() const { return queries_; }
  uint64_t max_bits_per_query() const { return max_query_bits_; }
  uint32_t n() const { return n_; }
  size_t ix_size() const { return ix_.size(); }
  size_t iy_size() const { return iy_.size(); }

 private:
  uint32_t n_;
  uint32_t word_bits_;  // ceil(log2 n)
  IndexSet ix_, iy_;
  Rng rng_;
  uint64_t bits_ = 0;
  uint64_t queries_ = 0;
  uint64_t max_query_bits_ = 0;
};

struct GhdResult {
  bool yes = false;
  bool outside_promise = false;
  double estimate = 0.0;
  uint64_t bits = 0;
  uint64_t queries = 0;
  uint64_t max_bits_per_query = 0;
};

/// Full reduction: simulate the estimator through the two-party oracle and
/// decide via the support threshold (|I_x|+|I_y|)/2 + n/4.  The estimator
/// defaults to the (1+eps) support estimator at eps = g/(3n).
GhdResult ghd_two_party(const std::vector<uint8_t>& x_bits, const std::vector<uint8_t>& y_bits,
                        uint32_t g, uint64_t seed,
                        const std::optional<CondEvalAlgorithm>& estimator = std::nullopt);

}  // namespace condlab

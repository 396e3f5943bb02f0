#include "condlab/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "condlab/estimators.hpp"
#include "condlab/instances.hpp"

namespace condlab {

size_t rank_in_set(const IndexSet& s, uint32_t j) { return s.rank_of(j); }

std::string BitMessage::str() const {
  std::string out;
  out.reserve(bits_.size());
  for (uint8_t b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::vector<uint8_t> encode_block(uint64_t rank, PClass p_class) {
  if (rank == 0) throw std::invalid_argument("encode_block: ranks are 1-based");
  std::vector<uint8_t> bits;
  uint64_t v = rank - 1;
  uint32_t width = rank == 1 ? 0 : static_cast<uint32_t>(std::bit_width(rank - 1));
  for (uint32_t i = width; i-- > 0;) bits.push_back((v >> i) & 1);
  uint8_t cls = static_cast<uint8_t>(p_class);
  bits.push_back((cls >> 1) & 1);
  bits.push_back(cls & 1);
  return bits;
}

namespace {

// ceil(log2 rank) for rank >= 1: bit width of rank-1 (rank 1 -> 0 bits).
// encode_block relies on rank-1 < 2^width and, for width > 0,
// rank-1 >= 2^(width-1); the decoder rejects noncanonical leading zeros.

class RecordingCondPr final : public CondPrOracleRef {
 public:
  RecordingCondPr(OracleSession& s, Transcript& t) : s_(s), t_(t) {}
  CondPrAnswer query(const IndexSet& set) override {
    OracleResponse r = s_.cond_pr(set);
    TranscriptStep step;
    step.set = set;
    CondPrAnswer a;
    if (is_failure(r)) {
      step.failed = a.failed = true;
    } else {
      const auto& sp = std::get<SamplePr>(r);
      step.element = a.element = sp.j;
      step.p = a.p = sp.p;
    }
    t_.steps.push_back(step);
    return a;
  }

 private:
  OracleSession& s_;
  Transcript& t_;
};

class ReplayCondPr final : public CondPrOracleRef {
 public:
  ReplayCondPr(const BitMessage& msg, Transcript& t) : msg_(msg), t_(t) {}

  CondPrAnswer query(const IndexSet& set) override {
    std::vector<uint8_t> payload = next_block();
    if (payload.size() < 2) throw std::runtime_error("decode: block shorter than the class field");
    uint8_t cls = static_cast<uint8_t>((payload[payload.size() - 2] << 1) | payload.back());
    if (cls == 0b11) throw std::runtime_error("decode: invalid probability class");
    size_t width = payload.size() - 2;
    uint64_t rank = 1;
    if (width > 0) {
      if (payload[0] == 0) throw std::runtime_error("decode: noncanonical rank encoding");
      if (width > 32) throw std::runtime_error("decode: rank field too wide");
      uint64_t v = 0;
      for (size_t i = 0; i < width; ++i) v = (v << 1) | payload[i];
      rank = v + 1;
    }

    TranscriptStep step;
    step.set = set;
    CondPrAnswer a;
    if (cls == static_cast<uint8_t>(PClass::Zero)) {
      if (rank != 1) throw std::runtime_error("decode: failure block carries a rank");
      step.failed = a.failed = true;
    } else {
      if (rank > set.size()) throw std::runtime_error("decode: rank exceeds the queried set");
      uint32_t z = set[rank - 1];
      step.element = a.element = z;
      if (cls == static_cast<uint8_t>(PClass::HalfPow)) {
        step.p = a.p = Rational::dyadic(1, z);
      } else {
        step.p = a.p = Rational::dyadic(1, z - 1);
      }
    }
    t_.steps.push_back(step);
    return a;
  }

  void expect_consumed() const {
    if (pos_ != msg_.size()) throw std::runtime_error("decode: trailing bits after the final block");
  }

 private:
  std::vector<uint8_t> next_block() {
    std::vector<uint8_t> payload;
    for (;;) {
      if (pos_ + 2 > msg_.size()) throw std::runtime_error("decode: message exhausted mid-block");
      payload.push_back(msg_[pos_]);
      uint8_t frame = msg_[pos_ + 1];
      pos_ += 2;
      if (frame == 1) return payload;
    }
  }

  const BitMessage& msg_;
  Transcript& t_;
  size_t pos_ = 0;
};

PClass classify_probability(uint32_t z, const Rational& p) {
  if (p == Rational::dyadic(1, z)) return PClass::HalfPow;
  if (z >= 1 && p == Rational::dyadic(1, z - 1)) return PClass::HalfPowMinusOne;
  throw std::invalid_argument("encode_run: probability outside the geometric alphabet");
}

}  // namespace

CondPrRun run_cond_pr_recorded(const CondPrAlgorithm& algo, OracleSession& session,
                               uint64_t shared_seed) {
  CondPrRun run;
  run.transcript.shared_seed = shared_seed;
  RecordingCondPr oracle(session, run.transcript);
  Rng algo_rng(shared_seed);
  run.output = algo(oracle, algo_rng);
  return run;
}

BitMessage encode_run(const Transcript& transcript) {
  BitMessage msg;
  for (const TranscriptStep& step : transcript.steps) {
    std::vector<uint8_t> block;
    if (step.failed) {
      block = encode_block(1, PClass::Zero);
    } else {
      uint64_t rank = rank_in_set(step.set, step.element);
      block = encode_block(rank, classify_probability(step.element, step.p));
    }
    for (size_t i = 0; i < block.size(); ++i) {
      msg.push_payload(block[i] != 0);
      msg.bits_.push_back(i + 1 == block.size() ? 1 : 0);
    }
  }
  return msg;
}

DecodedRun decode_run(const BitMessage& message, const CondPrAlgorithm& algo, uint64_t shared_seed) {
  DecodedRun run;
  run.transcript.shared_seed = shared_seed;
  ReplayCondPr oracle(message, run.transcript);
  Rng algo_rng(shared_seed);
  run.output = algo(oracle, algo_rng);
  oracle.expect_consumed();
  return run;
}

CondPrAlgorithm support_estimator_algorithm(uint32_t n) {
  return [n](CondPrOracleRef& oracle, Rng& rng) -> double {
    class Probe final : public EmptinessProbe {
     public:
      explicit Probe(CondPrOracleRef& o) : o_(o) {}
      bool nonempty(const IndexSet& s) override { return !o_.query(s).failed; }

     private:
      CondPrOracleRef& o_;
    } probe(oracle);
    return estimate_support_constant(n, probe, rng).estimate;
  };
}

GuessingStats run_integer_guessing(uint32_t n, size_t trials, const CondPrAlgorithm& algo,
                                   uint64_t root_seed, std::vector<GuessingTrialRow>* rows) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("run_integer_guessing: n must be a power of two");
  uint32_t logn = static_cast<uint32_t>(std::countr_zero(n));
  if (logn > 16)
    throw std::invalid_argument("run_integer_guessing: n capped at 2^16 (dyadic instance guard)");
  GuessingStats stats;
  stats.trials = trials;
  for (size_t trial = 0; trial < trials; ++trial) {
    uint64_t seed = Rng::mix(root_seed ^ trial);
    Rng trial_rng(seed);
    uint32_t x = 1 + static_cast<uint32_t>(trial_rng.below(uint64_t{logn}));
    uint64_t shared_seed = trial_rng.next_u64();
    uint64_t oracle_seed = trial_rng.next_u64();

    DiscreteDistribution dx = instances::geometric_hard(n, x);
    OracleSession session(dx, oracle_seed);
    CondPrRun alice = run_cond_pr_recorded(algo, session, shared_seed);
    BitMessage msg = encode_run(alice.transcript);
    DecodedRun bob = decode_run(msg, algo, shared_seed);

    bool rt_ok = bob.transcript.steps.size() == alice.transcript.steps.size();
    for (size_t i = 0; rt_ok && i < alice.transcript.steps.size(); ++i) {
      const auto& a = alice.transcript.steps[i];
      const auto& b = bob.transcript.steps[i];
      rt_ok = a.set == b.set && a.failed == b.failed &&
              (a.failed || (a.element == b.element && a.p == b.p));
    }
    if (!rt_ok || bob.output != alice.output) ++stats.round_trip_failures;

    uint64_t t = alice.transcript.steps.size();
    stats.total_steps += t;
    for (const auto& step : alice.transcript.steps) {
      if (step.failed) continue;
      ++stats.sampled_steps;
      double r = static_cast<double>(rank_in_set(step.set, step.element));
      stats.sum_rank += r;
      stats.sum_rank_sq += r * r;
    }
    stats.total_msg_bits += msg.size();
    if (msg.size() <= 16 * t) ++stats.msg_within_16t;

    uint32_t guess = 0;
    if (bob.output > 0) {
      double lx = std::log2(bob.output);
      guess = static_cast<uint32_t>(std::clamp(std::lround(lx), long{1}, long{logn}));
    }
    if (guess == x) ++stats.correct_guesses;
    if (rows)
      rows->push_back(GuessingTrialRow{x, guess, t, msg.size(), rt_ok && bob.output == alice.output});
  }
  return stats;
}

TwoPartyCondEval::TwoPartyCondEval(const std::vector<uint8_t>& x_bits,
                                   const std::vector<uint8_t>& y_bits, uint64_t seed)
    : n_(static_cast<uint32_t>(x_bits.size())), rng_(seed) {
  if (x_bits.size() != y_bits.size() || x_bits.empty())
    throw std::invalid_argument("TwoPartyCondEval: mismatched strings");
  std::vector<uint32_t> ix, iy;
  for (uint32_t i = 0; i < n_; ++i) {
    if (x_bits[i]) ix.push_back(i + 1);
    if (y_bits[i]) iy.push_back(i + 1);
  }
  if (ix.empty() && iy.empty()) throw std::invalid_argument("TwoPartyCondEval: both strings all-zero");
  ix_ = IndexSet(std::move(ix));
  iy_ = IndexSet(std::move(iy));
  word_bits_ = n_ <= 2 ? 1 : static_cast<uint32_t>(std::bit_width(n_ - 1));
  bits_ = 2 * word_bits_;  // preamble: |I_x| and |I_y|
}

CondEvalAnswer TwoPartyCondEval::query(const IndexSet& s) {
  ++queries_;
  uint64_t query_bits = 0;
  IndexSet sx = s.intersect(ix_);
  IndexSet sy = s.intersect(iy_);
  unsigned long cx = sx.size(), cy = sy.size();

  query_bits += word_bits_;  // Alice -> Bob: |S & I_x|
  uint32_t a = 0;
  if (cx > 0) {
    a = sx[rng_.below(uint64_t{cx})];
    query_bits += word_bits_;  // Alice -> Bob: her sampled element
  }
  query_bits += word_bits_;  // Bob -> Alice: |S & I_y|

  CondEvalAnswer ans;
  if (cx + cy == 0) {
    ans.failed = true;
  } else {
    uint32_t c;
    if (cx > 0 && rng_.below(cx + cy) < cx) {
      c = a;
    } else if (cy > 0) {
      c = sy[rng_.below(uint64_t{cy})];
    } else {
      c = a;
    }
    query_bits += word_bits_ + 1;  // Bob -> Alice: chosen element + membership flag

    unsigned long t = ix_.size() + iy_.size();
    bool both = ix_.contains(c) && iy_.contains(c);
    ans.element = c;
    ans.p = Rational(both ? 2 : 1, t);
    ans.cp = ans.p / Rational(cx + cy, t);
  }
  bits_ += query_bits;
  max_query_bits_ = std::max(max_query_bits_, query_bits);
  return ans;
}

GhdResult ghd_two_party(const std::vector<uint8_t>& x_bits, const std::vector<uint8_t>& y_bits,
                        uint32_t g, uint64_t seed,
                        const std::optional<CondEvalAlgorithm>& estimator) {
  if (g == 0) throw std::invalid_argument("ghd_two_party: g must be >= 1");
  uint32_t n = static_cast<uint32_t>(x_bits.size());
  uint32_t hd = 0;
  for (uint32_t i = 0; i < n; ++i) hd += (x_bits[i] != y_bits[i]) ? 1 : 0;

  Rng seeds(seed);
  uint64_t oracle_seed = seeds.next_u64();
  uint64_t algo_seed = seeds.next_u64();
  TwoPartyCondEval oracle(x_bits, y_bits, oracle_seed);

  CondEvalAlgorithm algo;
  if (estimator) {
    algo = *estimator;
  } else {
    double eps = std::min(1.0, static_cast<double>(g) / (3.0 * n));
    uint32_t padded = 1;
    while (padded < n) padded *= 2;
    algo = [padded, eps](CondEvalOracleRef& o, Rng& rng) -> double {
      class EProbe final : public EmptinessProbe {
       public:
        explicit EProbe(CondEvalOracleRef& o) : o_(o) {}
        bool nonempty(const IndexSet& s) override { return !o_.query(s).failed; }

       private:
        CondEvalOracleRef& o_;
      } eprobe(o);
      class SProbe final : public SamplingProbe {
       public:
        explicit SProbe(CondEvalOracleRef& o) : o_(o) {}
        std::optional<uint32_t> sample(const IndexSet& s) override {
          CondEvalAnswer a = o_.query(s);
          if (a.failed) return std::nullopt;
          return a.element;
        }

       private:
        CondEvalOracleRef& o_;
      } sprobe(o);
      return estimate_support_eps(padded, eps, eprobe, sprobe, rng).estimate;
    };
  }

  Rng algo_rng(algo_seed);
  GhdResult res;
  res.estimate = algo(oracle, algo_rng);
  res.bits = oracle.bits_communicated();
  res.queries = oracle.queries();
  res.max_bits_per_query = oracle.max_bits_per_query();
  double threshold = 0.5 * static_cast<double>(oracle.ix_size() + oracle.iy_size()) + n / 4.0;
  res.yes = res.estimate >= threshold;
  double half = n / 2.0;
  res.outside_promise = !(hd >= half + g) && !(hd < half - g);
  return res;
}

}  // namespace condlab

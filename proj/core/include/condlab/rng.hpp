#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>

namespace condlab {

/// Deterministic random source.  One instance per session/trial; never shared
/// across threads.  The engine is std::mt19937_64 (bit-exact across
/// platforms); all integer draws go through explicit rejection sampling so a
/// seed fully determines every run.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, bound); bound >= 1.
  uint64_t below(uint64_t bound);

  /// Uniform in [0, bound); bound >= 1.
  mpz_class below(const mpz_class& bound);

  bool coin() { return (next_u64() >> 63) != 0; }

  /// [0, 1) with 53 random bits.
  double unit_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // UniformRandomBitGenerator interface, for <random> distributions.
  using result_type = uint64_t;
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~0ull; }
  uint64_t operator()() { return next_u64(); }

  /// SplitMix64 finalizer.  Trial seeds derive as mix(root ^ trial_index).
  static uint64_t mix(uint64_t v);

 private:
  std::mt19937_64 eng_;
};

}  // namespace condlab

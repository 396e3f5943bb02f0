#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "condlab/rng.hpp"

namespace condlab {

/// Affine map h(x) = A*x xor b over GF(2)^w.  For uniform (A, b) the pair
/// (h(x), h(y)) is uniform for x != y, and the projection onto the last t
/// output bits inherits pairwise independence for every t <= w.
///
/// Domain convention: element j in [2^w] hashes as the word j-1.
class BitAffineHash {
 public:
  BitAffineHash(uint32_t w, std::vector<uint32_t> rows, uint32_t offset);

  static BitAffineHash draw(uint32_t w, Rng& rng);

  uint32_t w() const { return w_; }

  /// Raw word-to-word map.
  uint32_t eval_word(uint32_t x) const {
    uint32_t out = offset_;
    for (uint32_t i = 0; i < w_; ++i)
      out ^= static_cast<uint32_t>(__builtin_parity(rows_[i] & x)) << i;
    return out;
  }

  uint32_t eval_element(uint32_t j) const { return eval_word(j - 1); }

  /// Last t output bits of h (the suffix projection h_t).
  uint32_t suffix(uint32_t t, uint32_t j) const {
    return t == 0 ? 0u : (eval_element(j) & mask(t));
  }

  /// True iff h_t(j) = 0; always true at t = 0.
  bool prefix_zero_member(uint32_t t, uint32_t j) const { return suffix(t, j) == 0; }

  /// All of the words of h(*), element order (j = 1 .. 2^w).
  std::vector<uint32_t> eval_table() const;

  std::string hex() const;
  static BitAffineHash from_hex(uint32_t w, const std::string& hex);

 private:
  static uint32_t mask(uint32_t t) { return t >= 32 ? ~0u : (1u << t) - 1; }

  uint32_t w_;
  std::vector<uint32_t> rows_;  // rows_[i] = row of A producing output bit i
  uint32_t offset_;
};

/// Arithmetic in GF(2^w), w <= 32, with a fixed table of the
/// lexicographically smallest irreducible polynomial per degree.
/// Multiplication is table-driven (log/antilog) for w <= 16.
class GF2Field {
 public:
  /// Shared immutable instance per width (log tables are costly to build).
  static const GF2Field& get(uint32_t w);

  uint32_t w() const { return w_; }
  uint64_t modulus() const { return poly_; }

  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }

  static uint64_t irreducible_poly(uint32_t w);

 private:
  explicit GF2Field(uint32_t w);

  uint32_t w_;
  uint64_t poly_;
  std::vector<uint32_t> log_, exp_;  // populated for w <= 16
};

/// Sign hash h: [2^w] -> {-1, +1} from a uniform degree-3 polynomial over
/// GF(2^w); any 4 distinct inputs get jointly uniform signs.
class FourWiseSignHash {
 public:
  FourWiseSignHash(uint32_t w, std::array<uint32_t, 4> coeffs);

  static FourWiseSignHash draw(uint32_t w, Rng& rng);
  static FourWiseSignHash from_hex(uint32_t w, const std::string& hex);

  uint32_t w() const { return w_; }
  const std::array<uint32_t, 4>& coeffs() const { return c_; }

  /// +1 or -1 for element j in [2^w].
  int sign(uint32_t j) const {
    uint32_t u = j - 1;
    uint32_t p = c_[3];
    p = field_->add(field_->mul(p, u), c_[2]);
    p = field_->add(field_->mul(p, u), c_[1]);
    p = field_->add(field_->mul(p, u), c_[0]);
    return (p & 1u) ? -1 : +1;
  }

  std::string hex() const;

 private:
  uint32_t w_;
  const GF2Field* field_;
  std::array<uint32_t, 4> c_;  // c_[k] multiplies x^k
};

}  // namespace condlab

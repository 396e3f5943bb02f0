#include "condlab/rng.hpp"

#include <vector>

namespace condlab {

uint64_t Rng::mix(uint64_t v) {
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

Rng::Rng(uint64_t seed) : eng_(mix(seed)) {}

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  // Reject above the largest multiple of bound.
  uint64_t limit = ~0ull - (~0ull % bound) - 1;
  for (;;) {
    uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: nonpositive bound");
  if (mpz_fits_ulong_p(bound.get_mpz_t())) return mpz_class(below(mpz_get_ui(bound.get_mpz_t())));
  size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  size_t words = (bits + 63) / 64;
  std::vector<uint64_t> buf(words);
  mpz_class v;
  for (;;) {
    for (auto& w : buf) w = next_u64();
    // Mask the high word down to the bound's bit length.
    if (bits % 64) buf.back() &= (~0ull >> (64 - bits % 64));
    mpz_import(v.get_mpz_t(), words, -1, sizeof(uint64_t), 0, 0, buf.data());
    if (v < bound) return v;
  }
}

}  // namespace condlab

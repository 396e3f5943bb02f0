#include "condlab/hash.hpp"

#include <bit>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace condlab {

namespace {

// Lexicographically smallest irreducible polynomial of each degree, bit i =
// coefficient of x^i (the degree bit included).  Verified by a unit test.
constexpr uint64_t kIrreducible[33] = {
    0,
    0x3ull,         0x7ull,         0xbull,         0x13ull,        0x25ull,
    0x43ull,        0x83ull,        0x11bull,       0x203ull,       0x409ull,
    0x805ull,       0x1009ull,      0x201bull,      0x4021ull,      0x8003ull,
    0x1002bull,     0x20009ull,     0x40009ull,     0x80027ull,     0x100009ull,
    0x200005ull,    0x400003ull,    0x800021ull,    0x100001bull,   0x2000009ull,
    0x400001bull,   0x8000027ull,   0x10000003ull,  0x20000005ull,  0x40000003ull,
    0x80000009ull,  0x10000008dull,
};

uint32_t parse_hex_word(const std::string& s, size_t& pos, uint32_t digits) {
  if (pos + digits > s.size()) throw std::invalid_argument("hash hex string too short");
  uint32_t v = static_cast<uint32_t>(std::stoul(s.substr(pos, digits), nullptr, 16));
  pos += digits;
  return v;
}

}  // namespace

BitAffineHash::BitAffineHash(uint32_t w, std::vector<uint32_t> rows, uint32_t offset)
    : w_(w), rows_(std::move(rows)), offset_(offset) {
  if (w_ == 0 || w_ > 32) throw std::invalid_argument("BitAffineHash: w must be in [1, 32]");
  if (rows_.size() != w_) throw std::invalid_argument("BitAffineHash: need w matrix rows");
}

BitAffineHash BitAffineHash::draw(uint32_t w, Rng& rng) {
  if (w == 0 || w > 32) throw std::invalid_argument("draw_pairwise: w must be in [1, 32]");
  uint32_t m = w >= 32 ? ~0u : (1u << w) - 1;
  std::vector<uint32_t> rows(w);
  for (auto& r : rows) r = static_cast<uint32_t>(rng.next_u64()) & m;
  return BitAffineHash(w, std::move(rows), static_cast<uint32_t>(rng.next_u64()) & m);
}

std::vector<uint32_t> BitAffineHash::eval_table() const {
  // Columns of A as output words: h(x) = b ^ xor of col[i] over set bits of x,
  // so the table fills by subset DP in O(1) per entry.
  std::vector<uint32_t> col(w_, 0);
  for (uint32_t i = 0; i < w_; ++i)
    for (uint32_t j = 0; j < w_; ++j) col[i] |= ((rows_[j] >> i) & 1u) << j;
  std::vector<uint32_t> t(size_t{1} << w_);
  t[0] = offset_;
  for (size_t x = 1; x < t.size(); ++x)
    t[x] = t[x & (x - 1)] ^ col[static_cast<uint32_t>(std::countr_zero(x))];
  return t;
}

std::string BitAffineHash::hex() const {
  std::ostringstream os;
  uint32_t digits = (w_ + 3) / 4;
  os << std::hex;
  for (uint32_t r : rows_) {
    os.width(digits);
    os.fill('0');
    os << r;
  }
  os.width(digits);
  os.fill('0');
  os << offset_;
  return os.str();
}

BitAffineHash BitAffineHash::from_hex(uint32_t w, const std::string& hex) {
  uint32_t digits = (w + 3) / 4;
  size_t pos = 0;
  std::vector<uint32_t> rows(w);
  for (auto& r : rows) r = parse_hex_word(hex, pos, digits);
  uint32_t offset = parse_hex_word(hex, pos, digits);
  return BitAffineHash(w, std::move(rows), offset);
}

uint64_t GF2Field::irreducible_poly(uint32_t w) {
  if (w == 0 || w > 32) throw std::invalid_argument("GF2Field: w must be in [1, 32]");
  return kIrreducible[w];
}

const GF2Field& GF2Field::get(uint32_t w) {
  if (w == 0 || w > 32) throw std::invalid_argument("GF2Field: w must be in [1, 32]");
  static std::mutex mu;
  static std::unique_ptr<GF2Field> cache[33];
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[w]) cache[w].reset(new GF2Field(w));
  return *cache[w];
}

GF2Field::GF2Field(uint32_t w) : w_(w), poly_(irreducible_poly(w)) {
  if (w_ <= 16 && w_ >= 2) {
    // log/antilog over the multiplicative group generated by the smallest
    // generator; for speed only, mul() falls back to shift-and-xor otherwise.
    size_t order = (size_t{1} << w_) - 1;
    log_.assign(size_t{1} << w_, 0);
    exp_.assign(2 * order, 0);
    auto slow_mul = [&](uint32_t a, uint32_t b) {
      uint64_t r = 0, aa = a;
      while (b) {
        if (b & 1) r ^= aa;
        b >>= 1;
        aa <<= 1;
        if ((aa >> w_) & 1) aa ^= poly_;
      }
      return static_cast<uint32_t>(r);
    };
    for (uint32_t g = 2;; ++g) {
      uint32_t v = 1;
      size_t k = 0;
      bool ok = true;
      std::vector<uint32_t> seen(size_t{1} << w_, 0);
      for (; k < order; ++k) {
        if (seen[v]) {
          ok = false;
          break;
        }
        seen[v] = 1;
        exp_[k] = v;
        log_[v] = static_cast<uint32_t>(k);
        v = slow_mul(v, g);
      }
      if (ok && v == 1) break;
    }
    for (size_t k = 0; k < order; ++k) exp_[order + k] = exp_[k];
  }
}

uint32_t GF2Field::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  uint64_t r = 0, aa = a;
  while (b) {
    if (b & 1) r ^= aa;
    b >>= 1;
    aa <<= 1;
    if ((aa >> w_) & 1) aa ^= poly_;
  }
  return static_cast<uint32_t>(r);
}

FourWiseSignHash::FourWiseSignHash(uint32_t w, std::array<uint32_t, 4> coeffs)
    : w_(w), field_(&GF2Field::get(w)), c_(coeffs) {
  if (w < 2) throw std::invalid_argument("FourWiseSignHash: w must be >= 2");
}

FourWiseSignHash FourWiseSignHash::draw(uint32_t w, Rng& rng) {
  if (w < 2 || w > 32) throw std::invalid_argument("draw_fourwise_sign: w must be in [2, 32]");
  uint32_t m = w >= 32 ? ~0u : (1u << w) - 1;
  std::array<uint32_t, 4> c;
  for (auto& v : c) v = static_cast<uint32_t>(rng.next_u64()) & m;
  return FourWiseSignHash(w, c);
}

FourWiseSignHash FourWiseSignHash::from_hex(uint32_t w, const std::string& hex) {
  uint32_t digits = (w + 3) / 4;
  size_t pos = 0;
  std::array<uint32_t, 4> c;
  for (auto& v : c) v = parse_hex_word(hex, pos, digits);
  return FourWiseSignHash(w, c);
}

std::string FourWiseSignHash::hex() const {
  std::ostringstream os;
  uint32_t digits = (w_ + 3) / 4;
  os << std::hex;
  for (uint32_t v : c_) {
    os.width(digits);
    os.fill('0');
    os << v;
  }
  return os.str();
}

}  // namespace condlab

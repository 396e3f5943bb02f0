#include "condlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condlab {
namespace instances {

DiscreteDistribution geometric_hard(uint32_t n, uint32_t i) {
  if (i == 0 || i > 16) throw std::invalid_argument("geometric_hard: i must be in [1, 16]");
  if ((uint64_t{1} << i) > n) throw std::invalid_argument("geometric_hard: 2^i exceeds n");
  uint32_t top = uint32_t{1} << i;
  std::vector<std::pair<uint32_t, Rational>> pmf;
  pmf.reserve(top);
  for (uint32_t j = 1; j <= top - 1; ++j) pmf.emplace_back(j, Rational::dyadic(1, j));
  pmf.emplace_back(top, Rational::dyadic(1, top - 1));
  return DiscreteDistribution::from_pmf(n, std::move(pmf));
}

DiscreteDistribution polya_dirichlet(uint32_t n, uint32_t x, uint32_t m, Rng& rng) {
  if (m == 0) throw std::invalid_argument("polya_dirichlet: m must be >= 1");
  if (x == 0 || x > 20 || (uint64_t{1} << x) > n)
    throw std::invalid_argument("polya_dirichlet: bad x");
  uint32_t k = uint32_t{1} << x;
  // Integer weights scaled by 2^K: color j starts at 2^(K-j), each drawn
  // ball adds 2^K.  Selection probability is (alpha_j + X_j) / (sum alpha + steps).
  mpz_class unit(1);
  mpz_mul_2exp(unit.get_mpz_t(), unit.get_mpz_t(), k);
  std::vector<mpz_class> weight(k);
  mpz_class total(0);
  for (uint32_t j = 1; j <= k; ++j) {
    mpz_class w(1);
    mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), k - j);
    weight[j - 1] = w;
    total += w;
  }
  std::vector<uint32_t> added(k, 0);
  for (uint32_t step = 0; step < m; ++step) {
    mpz_class u = rng.below(total);
    for (uint32_t c = 0; c < k; ++c) {
      if (u < weight[c]) {
        ++added[c];
        weight[c] += unit;
        total += unit;
        break;
      }
      u -= weight[c];
    }
  }
  std::vector<std::pair<uint32_t, Rational>> pmf;
  for (uint32_t c = 0; c < k; ++c)
    if (added[c] > 0) pmf.emplace_back(c + 1, Rational(added[c], m));
  return DiscreteDistribution::from_pmf(n, std::move(pmf));
}

DiscreteDistribution gap_hamming_instance(const std::vector<uint8_t>& x_bits,
                                          const std::vector<uint8_t>& y_bits) {
  if (x_bits.size() != y_bits.size() || x_bits.empty())
    throw std::invalid_argument("gap_hamming_instance: mismatched strings");
  uint32_t n = static_cast<uint32_t>(x_bits.size());
  unsigned long cx = 0, cy = 0;
  for (uint32_t i = 0; i < n; ++i) {
    cx += x_bits[i] ? 1 : 0;
    cy += y_bits[i] ? 1 : 0;
  }
  if (cx + cy == 0) throw std::invalid_argument("gap_hamming_instance: both strings all-zero");
  std::vector<std::pair<uint32_t, Rational>> pmf;
  for (uint32_t i = 0; i < n; ++i) {
    if (x_bits[i] && y_bits[i])
      pmf.emplace_back(i + 1, Rational(2, cx + cy));
    else if (x_bits[i] || y_bits[i])
      pmf.emplace_back(i + 1, Rational(1, cx + cy));
  }
  return DiscreteDistribution::from_pmf(n, std::move(pmf));
}

DiscreteDistribution l2_lower_instance(uint32_t n, uint32_t k, const IndexSet& g) {
  uint32_t root = static_cast<uint32_t>(std::lround(std::sqrt(static_cast<double>(n))));
  if (root * root != n) throw std::invalid_argument("l2_lower_instance: n must be a perfect square");
  if (g.size() != n - root) throw std::invalid_argument("l2_lower_instance: |G| must be n - sqrt(n)");
  if (g.contains(k)) throw std::invalid_argument("l2_lower_instance: k must not lie in G");
  std::vector<std::pair<uint32_t, Rational>> pmf;
  pmf.emplace_back(k, Rational(1, root));
  for (uint32_t j : g) pmf.emplace_back(j, Rational(1, n));
  return DiscreteDistribution::from_pmf(n, std::move(pmf));
}

DiscreteDistribution bounded_cond_instance(uint32_t n, BoundedVariant variant,
                                           const std::vector<uint32_t>& indices) {
  if (n < 4) throw std::invalid_argument("bounded_cond_instance: n must be >= 4");
  size_t want = variant == BoundedVariant::TwoPoint ? 1 : 2;
  if (indices.size() != want) throw std::invalid_argument("bounded_cond_instance: bad index count");
  for (uint32_t i : indices)
    if (i < 2 || i > n) throw std::invalid_argument("bounded_cond_instance: indices must lie in {2..n}");
  if (want == 2 && indices[0] == indices[1])
    throw std::invalid_argument("bounded_cond_instance: duplicate index");
  std::vector<std::pair<uint32_t, Rational>> pmf;
  pmf.emplace_back(1, Rational(n - 2, n));
  if (variant == BoundedVariant::TwoPoint) {
    pmf.emplace_back(indices[0], Rational(2, n));
  } else {
    pmf.emplace_back(indices[0], Rational(1, n));
    pmf.emplace_back(indices[1], Rational(1, n));
  }
  return DiscreteDistribution::from_pmf(n, std::move(pmf));
}

DiscreteDistribution intro_perturbed_uniform(uint32_t n, uint32_t i, uint32_t j) {
  if (i == j) throw std::invalid_argument("intro_perturbed_uniform: i and j must differ");
  std::vector<std::pair<uint32_t, Rational>> pmf;
  pmf.reserve(n - 1);
  for (uint32_t v = 1; v <= n; ++v) {
    if (v == j) continue;
    pmf.emplace_back(v, v == i ? Rational(2, n) : Rational(1, n));
  }
  return DiscreteDistribution::from_pmf(n, std::move(pmf));
}

DiscreteDistribution uniform_random_support(uint32_t n, uint32_t support_size, Rng& rng) {
  if (support_size == 0 || support_size > n)
    throw std::invalid_argument("uniform_random_support: bad support size");
  // Partial Fisher-Yates over [1, n].
  std::vector<uint32_t> pool(n);
  for (uint32_t i = 0; i < n; ++i) pool[i] = i + 1;
  for (uint32_t i = 0; i < support_size; ++i) {
    uint64_t j = i + rng.below(static_cast<uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(support_size);
  return DiscreteDistribution::uniform_on(n, IndexSet(std::move(pool)));
}

}  // namespace instances
}  // namespace condlab

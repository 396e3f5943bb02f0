#include "condlab/analysis.hpp"

#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace condlab {
namespace analysis {

namespace {

// Bernoulli-number coefficients B_2k / (2k) for the digamma series and
// B_2k / (2k (2k-1)) for the log-gamma series, k = 1..7.
constexpr double kDigammaSeries[] = {
    1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760, 1.0 / 12,
};
constexpr double kLogGammaSeries[] = {
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360, 1.0 / 156,
};
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr int kLift = 10;

}  // namespace

double digamma(double w) {
  if (!(w > 0)) throw std::domain_error("digamma: argument must be positive");
  double acc = 0.0;
  while (w < kLift) {  // psi(w) = psi(w+1) - 1/w
    acc -= 1.0 / w;
    w += 1.0;
  }
  double inv = 1.0 / w;
  double inv2 = inv * inv;
  double series = 0.0;
  double pow = inv2;
  for (double c : kDigammaSeries) {
    series += c * pow;
    pow *= inv2;
  }
  return acc + std::log(w) - 0.5 * inv - series;
}

double log_gamma(double w) {
  if (!(w > 0)) throw std::domain_error("log_gamma: argument must be positive");
  double acc = 0.0;
  while (w < kLift) {  // lnGamma(w) = lnGamma(w+1) - ln w
    acc -= std::log(w);
    w += 1.0;
  }
  double inv = 1.0 / w;
  double inv2 = inv * inv;
  double series = 0.0;
  double pow = inv;
  for (double c : kLogGammaSeries) {
    series += c * pow;
    pow *= inv2;
  }
  return acc + (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series;
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

double kl_beta(const BetaParams& p, const BetaParams& q) {
  return log_beta(q.a, q.b) - log_beta(p.a, p.b) + (p.a - q.a) * digamma(p.a) +
         (p.b - q.b) * digamma(p.b) + (q.a - p.a + q.b - p.b) * digamma(p.a + p.b);
}

GridScan check_digamma_bound(size_t grid_points) {
  GridScan scan;
  for (size_t i = 1; i <= grid_points; ++i) {
    double w = static_cast<double>(i) / static_cast<double>(grid_points);
    double v = std::fabs(w * digamma(w));
    if (v > scan.max_value) {
      scan.max_value = v;
      scan.arg_max = w;
    }
  }
  return scan;
}

GridScan kl_bound_scan(const KlScanConfig& cfg, Rng& rng) {
  GridScan scan;
  std::vector<double> alpha(cfg.weight_count + 1, 0.0);
  for (uint32_t j = 1; j <= cfg.weight_count; ++j) alpha[j] = std::ldexp(1.0, -static_cast<int>(j));

  for (size_t trial = 0; trial < cfg.trials; ++trial) {
    // Disjoint nonempty C, U within [weight_count] and two cutoffs x < x'; the
    // restricted sums a = alpha(C & [2^x]) etc. automatically satisfy the
    // ratio-in-[1,2] constraints of the nested configuration.
    uint32_t x = 1 + static_cast<uint32_t>(rng.below(uint64_t{cfg.max_log_cutoff}));
    uint32_t xp = x + 1 + static_cast<uint32_t>(rng.below(uint64_t{cfg.max_log_cutoff}));
    uint32_t lo = uint32_t{1} << x;
    uint32_t hi = std::min(cfg.weight_count, uint32_t{1} << xp);

    double a = 0, b = 0, ap = 0, bp = 0;
    bool has_c = false, has_u = false;
    for (uint32_t j = 1; j <= hi; ++j) {
      uint64_t r = rng.below(uint64_t{3});  // 0: skip, 1: C, 2: U
      if (r == 1) {
        if (j <= lo) {
          a += alpha[j];
          has_c = true;
        }
        ap += alpha[j];
      } else if (r == 2) {
        if (j <= lo) {
          b += alpha[j];
          has_u = true;
        }
        bp += alpha[j];
      }
    }
    if (!has_c || !has_u) continue;
    BetaParams small{a, b}, large{ap, bp};
    double v = std::max(kl_beta(small, large), kl_beta(large, small));
    if (v > scan.max_value) {
      scan.max_value = v;
      scan.arg_max = static_cast<double>(trial);
    }
  }
  return scan;
}

double gamma_draw(double shape, Rng& rng) {
  std::gamma_distribution<double> g(shape, 1.0);
  return g(rng);
}

std::vector<double> dirichlet_sample(const std::vector<double>& alphas, Rng& rng) {
  if (alphas.empty()) throw std::invalid_argument("dirichlet_sample: no parameters");
  for (double a : alphas)
    if (!(a > 0)) throw std::invalid_argument("dirichlet_sample: parameters must be positive");
  std::vector<double> draw(alphas.size());
  double total = 0.0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    draw[i] = gamma_draw(alphas[i], rng);
    total += draw[i];
  }
  if (total <= 0) {  // all components underflowed; retry
    return dirichlet_sample(alphas, rng);
  }
  for (double& v : draw) v /= total;
  return draw;
}

double beta_draw(double a, double b, Rng& rng) {
  double x = gamma_draw(a, rng);
  double y = gamma_draw(b, rng);
  if (x + y <= 0) return beta_draw(a, b, rng);
  return x / (x + y);
}

BetaTailReport beta_tail_check(double a, double b, double c, double delta, size_t samples, Rng& rng) {
  if (!(b <= a / c)) throw std::invalid_argument("beta_tail_check: requires b <= a/c");
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("beta_tail_check: delta in (0,1)");
  BetaTailReport rep;
  double s = a + b;
  rep.expected_mean = a / s;
  double var = a * b / (s * s * (s + 1.0));
  rep.chebyshev_bound = 4.0 * var / (delta * delta);
  size_t hits = 0;
  double sum = 0.0;
  for (size_t i = 0; i < samples; ++i) {
    double y = beta_draw(a, b, rng);
    sum += y;
    if (y <= 1.0 - delta) ++hits;
  }
  rep.empirical_tail = static_cast<double>(hits) / samples;
  rep.mean = sum / samples;
  rep.mc_sigma = std::sqrt(std::max(rep.empirical_tail * (1 - rep.empirical_tail), 1.0 / samples) /
                           samples);
  rep.within_bound = rep.empirical_tail <= rep.chebyshev_bound + 3.0 * rep.mc_sigma;
  return rep;
}

double beta_cdf(double a, double b, double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  return gsl_sf_beta_inc(a, b, x);
}

IndependenceReport independence_property_check(const std::vector<double>& alphas,
                                               const std::vector<uint32_t>& a_set,
                                               const std::vector<uint32_t>& b_set, double d,
                                               double bucket_width, size_t samples,
                                               double significance, Rng& rng) {
  size_t k = alphas.size();
  auto validate = [&](const std::vector<uint32_t>& s) {
    for (uint32_t i : s)
      if (i == 0 || i > k) throw std::invalid_argument("independence_property_check: index out of range");
  };
  validate(a_set);
  validate(b_set);
  for (uint32_t i : b_set)
    if (std::find(a_set.begin(), a_set.end(), i) == a_set.end())
      throw std::invalid_argument("independence_property_check: B must be a within A");
  if (b_set.empty() || b_set.size() >= a_set.size())
    throw std::invalid_argument("independence_property_check: need B a strict nonempty within A");

  IndependenceReport rep;
  double alpha_b = 0, alpha_rest = 0;
  for (uint32_t i : a_set) alpha_rest += alphas[i - 1];
  for (uint32_t i : b_set) {
    alpha_b += alphas[i - 1];
    alpha_rest -= alphas[i - 1];
  }
  rep.claimed = BetaParams{alpha_b, alpha_rest};

  std::vector<double> ratios;
  for (size_t it = 0; it < samples; ++it) {
    std::vector<double> p = dirichlet_sample(alphas, rng);
    double sum_a = 0, sum_b = 0;
    for (uint32_t i : a_set) sum_a += p[i - 1];
    for (uint32_t i : b_set) sum_b += p[i - 1];
    if (std::fabs(sum_a - d) <= bucket_width && sum_a > 0) ratios.push_back(sum_b / sum_a);
  }
  rep.bucket_samples = ratios.size();
  if (ratios.empty()) {
    rep.inconclusive = true;
    return rep;
  }

  std::sort(ratios.begin(), ratios.end());
  double m = static_cast<double>(ratios.size());
  double dmax = 0.0;
  for (size_t i = 0; i < ratios.size(); ++i) {
    double cdf = beta_cdf(rep.claimed.a, rep.claimed.b, ratios[i]);
    dmax = std::max(dmax, std::fabs(cdf - (i + 1) / m));
    dmax = std::max(dmax, std::fabs(cdf - i / m));
  }
  rep.ks_statistic = dmax;
  rep.ks_critical = std::sqrt(-0.5 * std::log(significance / 2.0)) / std::sqrt(m);
  rep.pass = rep.ks_statistic <= rep.ks_critical;
  return rep;
}

}  // namespace analysis
}  // namespace condlab

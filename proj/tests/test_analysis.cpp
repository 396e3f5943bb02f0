#include "condlab/analysis.hpp"

#include <cmath>

#include "doctest.h"

using namespace condlab;
using namespace condlab::analysis;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Independent oracle: KL between beta densities by composite Simpson, with
// endpoint substitutions x = u^2 and x = 1 - v^2 to tame the power/log
// singularities at 0 and 1.
double kl_beta_quadrature(const BetaParams& p, const BetaParams& q, size_t intervals) {
  auto log_density = [](const BetaParams& b, double x) {
    return (b.a - 1) * std::log(x) + (b.b - 1) * std::log1p(-x) -
           (std::lgamma(b.a) + std::lgamma(b.b) - std::lgamma(b.a + b.b));
  };
  auto f = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    double lp = log_density(p, x);
    return std::exp(lp) * (lp - log_density(q, x));
  };
  auto simpson = [&](auto&& g, double lo, double hi, size_t cells) {
    double h = (hi - lo) / cells;
    double acc = g(lo) + g(hi);
    for (size_t i = 1; i < cells; ++i) acc += g(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
  };
  double umax = std::sqrt(0.5);
  double left = simpson([&](double u) { return f(u * u) * 2 * u; }, 0.0, umax, intervals);
  double right = simpson([&](double v) { return f(1.0 - v * v) * 2 * v; }, 0.0, umax, intervals);
  return left + right;
}

}  // namespace

TEST_CASE("digamma closed forms") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-12));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2 * std::log(2.0)).epsilon(1e-12));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-12));
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.0), std::domain_error);
}

TEST_CASE("digamma recurrence across (0, 8]") {
  for (int i = 1; i <= 4000; ++i) {
    double w = i * 0.002;
    CHECK(std::fabs(digamma(w + 1) - digamma(w) - 1.0 / w) < 1e-10);
  }
}

TEST_CASE("digamma agrees with a finite difference of lgamma") {
  for (double w : {0.3, 0.7, 1.9, 3.14, 8.5, 20.0}) {
    double h = 1e-5;
    double fd = (std::lgamma(w + h) - std::lgamma(w - h)) / (2 * h);
    CHECK(digamma(w) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("log_gamma matches std::lgamma") {
  for (double w = 0.05; w < 50.0; w += 0.173) {
    CHECK(log_gamma(w) == doctest::Approx(std::lgamma(w)).epsilon(1e-12));
  }
}

TEST_CASE("kl_beta vanishes on identical parameters") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    BetaParams p{0.01 + 4 * rng.unit_real(), 0.01 + 4 * rng.unit_real()};
    CHECK(std::fabs(kl_beta(p, p)) <= 1e-10);
  }
}

TEST_CASE("kl_beta is nonnegative on random pairs") {
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) {
    BetaParams p{0.05 + 3.95 * rng.unit_real(), 0.05 + 3.95 * rng.unit_real()};
    BetaParams q{0.05 + 3.95 * rng.unit_real(), 0.05 + 3.95 * rng.unit_real()};
    CHECK(kl_beta(p, q) >= -1e-10);
  }
}

TEST_CASE("kl_beta matches quadrature") {
  // Closed form: KL(Beta(1,1)||Beta(2,1)) = 1 - ln 2.
  CHECK(kl_beta({1, 1}, {2, 1}) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-12));
  CHECK(kl_beta({1, 1}, {2, 1}) ==
        doctest::Approx(kl_beta_quadrature({1, 1}, {2, 1}, 200000)).epsilon(1e-6));
  CHECK(kl_beta({2, 3}, {3, 2}) ==
        doctest::Approx(kl_beta_quadrature({2, 3}, {3, 2}, 200000)).epsilon(1e-6));
  // integrable endpoint singularity: quadrature is the loose side here
  CHECK(kl_beta({0.5, 1.5}, {1.5, 0.5}) ==
        doctest::Approx(kl_beta_quadrature({0.5, 1.5}, {1.5, 0.5}, 400000)).epsilon(5e-3));
}

TEST_CASE("digamma bound scan stays under 3") {
  auto scan = check_digamma_bound(10000);
  CHECK(scan.max_value <= 3.0);
  CHECK(scan.max_value >= 0.5);  // attained near w -> 0 where w psi(w) -> -1
}

TEST_CASE("kl scan over nested geometric configurations is bounded") {
  Rng rng(3);
  KlScanConfig cfg;
  cfg.trials = 10000;
  auto scan = kl_bound_scan(cfg, rng);
  CHECK(scan.max_value <= 10.0);
  CHECK(scan.max_value >= 0.0);
}

TEST_CASE("dirichlet draws live on the simplex") {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    auto p = dirichlet_sample({1.0, 2.0, 0.5, 1.25}, rng);
    double sum = 0;
    for (double v : p) sum += v;
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
  CHECK_THROWS(dirichlet_sample({1.0, -1.0}, rng));
  CHECK_THROWS(dirichlet_sample({}, rng));
}

TEST_CASE("dirichlet coordinate means") {
  Rng rng(5);
  std::vector<double> alphas{1.0, 2.0, 3.0};
  double total_alpha = 6.0;
  const size_t kN = 100000;
  std::vector<double> sum(3, 0.0), sumsq(3, 0.0);
  for (size_t i = 0; i < kN; ++i) {
    auto p = dirichlet_sample(alphas, rng);
    for (int j = 0; j < 3; ++j) {
      sum[j] += p[j];
      sumsq[j] += p[j] * p[j];
    }
  }
  for (int j = 0; j < 3; ++j) {
    double mean = sum[j] / kN;
    double se = std::sqrt((sumsq[j] / kN - mean * mean) / kN);
    CHECK(std::fabs(mean - alphas[j] / total_alpha) <= 3 * se);
  }
}

TEST_CASE("uniform simplex at alpha = 1") {
  Rng rng(6);
  const size_t kN = 100000;
  double sum = 0, sumsq = 0;
  for (size_t i = 0; i < kN; ++i) {
    double v = dirichlet_sample({1, 1, 1}, rng)[0];
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / kN;
  double se = std::sqrt((sumsq / kN - mean * mean) / kN);
  CHECK(std::fabs(mean - 1.0 / 3) <= 3 * se);
}

TEST_CASE("K=2 dirichlet reduces to beta") {
  Rng rng(7);
  const size_t kN = 50000;
  double a = 2.0, b = 5.0;
  double sum = 0, sumsq = 0;
  for (size_t i = 0; i < kN; ++i) {
    double v = dirichlet_sample({a, b}, rng)[0];
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / kN;
  double var = sumsq / kN - mean * mean;
  CHECK(std::fabs(mean - a / (a + b)) <= 4 * std::sqrt(var / kN));
  double beta_var = a * b / ((a + b) * (a + b) * (a + b + 1));
  CHECK(std::fabs(var - beta_var) <= 0.1 * beta_var);
}

TEST_CASE("beta tail check against the chebyshev chain") {
  Rng rng(8);
  auto rep = beta_tail_check(1.0, 1e-4, 1e4, 0.01, 50000, rng);
  CHECK(rep.within_bound);
  CHECK(std::fabs(rep.mean - rep.expected_mean) <= 0.01);

  // delta close to 1 with mean near 1: empirical tail vanishes
  auto rep2 = beta_tail_check(10.0, 1e-3, 1e4, 0.9, 20000, rng);
  CHECK(rep2.empirical_tail <= 1e-3);

  CHECK_THROWS(beta_tail_check(1.0, 0.5, 1e4, 0.01, 10, rng));  // b > a/c
}

TEST_CASE("independence property: uniform K=3 closed form") {
  Rng rng(9);
  auto rep = independence_property_check({1, 1, 1}, {1, 2}, {1}, 0.5, 0.05, 200000, 0.01, rng);
  REQUIRE_FALSE(rep.inconclusive);
  CHECK(rep.claimed.a == 1.0);
  CHECK(rep.claimed.b == 1.0);
  CHECK(rep.bucket_samples > 1000);
  CHECK(rep.pass);
}

TEST_CASE("independence property: geometric weights, nested sets") {
  Rng rng(10);
  std::vector<double> alphas;
  for (int j = 1; j <= 6; ++j) alphas.push_back(std::ldexp(1.0, -j));
  auto rep = independence_property_check(alphas, {1, 2, 3, 4}, {1, 2}, 0.97, 0.02, 150000, 0.01, rng);
  REQUIRE_FALSE(rep.inconclusive);
  CHECK(rep.pass);
}

TEST_CASE("independence property: empty bucket is inconclusive") {
  Rng rng(11);
  auto rep = independence_property_check({1, 1, 1}, {1, 2}, {1}, 0.5, 1e-9, 200, 0.01, rng);
  CHECK(rep.inconclusive);
  // degenerate B = A is excluded by the precondition
  CHECK_THROWS(independence_property_check({1, 1, 1}, {1, 2}, {1, 2}, 0.5, 0.1, 10, 0.01, rng));
  CHECK_THROWS(independence_property_check({1, 1, 1}, {1, 2}, {3}, 0.5, 0.1, 10, 0.01, rng));
}

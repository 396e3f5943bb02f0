#include "condlab/testers.hpp"

#include <cmath>

#include "condlab/hash.hpp"
#include "condlab/instances.hpp"
#include "doctest.h"

using namespace condlab;

namespace {

IndexSet subset_from_mask(uint32_t mask, uint32_t n) {
  std::vector<uint32_t> v;
  for (uint32_t j = 1; j <= n; ++j)
    if (mask & (1u << (j - 1))) v.push_back(j);
  return IndexSet(std::move(v));
}

}  // namespace

TEST_CASE("equivalence tester is one-sided and uses two queries per side") {
  auto d = instances::geometric_hard(16, 3);
  Rng rng(1);
  for (int it = 0; it < 200; ++it) {
    OracleSession a(d, 100 + it), b(d, 200 + it);
    CHECK(test_equivalence(a, b, rng) == Verdict::Accept);
    CHECK(a.ledger().set_eval == 2);
    CHECK(b.ledger().set_eval == 2);
  }
}

TEST_CASE("exhaustive: equal distributions agree on every subset at n=10") {
  auto d = DiscreteDistribution::from_pmf(
      10, {{1, Rational(1, 2)}, {4, Rational(1, 3)}, {9, Rational(1, 6)}});
  for (uint32_t mask = 0; mask < (1u << 10); ++mask) {
    IndexSet s = subset_from_mask(mask, 10);
    CHECK(d.mass(s) == d.mass(s));
  }
}

TEST_CASE("exhaustive soundness: at least half the subsets separate unequal pairs") {
  const uint32_t n = 10;
  auto u = DiscreteDistribution::uniform(n);
  std::vector<DiscreteDistribution> others;
  others.push_back(instances::intro_perturbed_uniform(n, 2, 7));
  others.push_back(DiscreteDistribution::point_mass(n, 1));
  others.push_back(instances::geometric_hard(n, 3));
  for (const auto& other : others) {
    size_t separate = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      IndexSet s = subset_from_mask(mask, n);
      if (u.mass(s) != other.mass(s)) ++separate;
    }
    CHECK(separate * 2 >= (size_t{1} << n));
  }
}

TEST_CASE("equivalence tester rejects separated pairs often") {
  const uint32_t n = 64;
  auto u = DiscreteDistribution::uniform(n);
  auto uprime = instances::intro_perturbed_uniform(n, 5, 40);
  Rng rng(7);
  size_t rejects = 0;
  const size_t kTrials = 1000;
  for (size_t it = 0; it < kTrials; ++it) {
    OracleSession a(u, Rng::mix(it)), b(uprime, Rng::mix(9999 - it));
    if (test_equivalence(a, b, rng) == Verdict::Reject) ++rejects;
  }
  // True rejection probability is exactly 3/4 for a two-element difference.
  CHECK(rejects >= kTrials * 70 / 100);
}

TEST_CASE("grained tester accepts m-grained inputs always") {
  Rng rng(9);
  auto u = DiscreteDistribution::uniform(24);  // 24-grained
  for (int it = 0; it < 300; ++it) {
    OracleSession s(u, 50 + it);
    CHECK(test_grained(s, 24, rng) == Verdict::Accept);
    CHECK(s.ledger().set_eval == 2);
  }
  auto d2 = instances::geometric_hard(16, 2);  // 8-grained
  for (int it = 0; it < 100; ++it) {
    OracleSession s(d2, 90 + it);
    CHECK(test_grained(s, 8, rng) == Verdict::Accept);
  }
}

TEST_CASE("grained tester rejects a half-grain perturbation") {
  const uint32_t n = 32;
  // masses 3/(2n) and 1/(2n) at two spots; the rest uniform.
  std::vector<std::pair<uint32_t, Rational>> pmf;
  for (uint32_t j = 3; j <= n; ++j) pmf.emplace_back(j, Rational(1, n));
  pmf.emplace_back(1, Rational(3, 2 * n));
  pmf.emplace_back(2, Rational(1, 2 * n));
  auto d = DiscreteDistribution::from_pmf(n, std::move(pmf));
  Rng rng(11);
  size_t rejects = 0;
  const size_t kTrials = 1000;
  for (size_t it = 0; it < kTrials; ++it) {
    OracleSession s(d, Rng::mix(it * 3));
    if (test_grained(s, n, rng) == Verdict::Reject) ++rejects;
  }
  CHECK(rejects >= kTrials * 70 / 100);
}

TEST_CASE("l2 point mass gives estimate exactly 1") {
  auto p = DiscreteDistribution::point_mass(8, 5);
  OracleSession s(p, 13);
  Rng rng(13);
  auto rep = estimate_l2_squared(s, 1.0, rng);
  CHECK(rep.exact == Rational::one());
  CHECK(rep.repetitions == 4);
  CHECK(rep.queries == 8);
  CHECK(s.ledger().set_eval == 8);
}

TEST_CASE("l2 exhaustive unbiasedness and variance identity at w=3") {
  // Average X over the whole 4-wise family equals sum D(j)^2 exactly.  The
  // family variance is exactly twice the pair sum: Var = 2*sum_{i!=j}
  // D^2(i)D^2(j), so Var <= 2 E^2 (with pair_sum <= E^2 on the nose).
  Rng seedgen(17);
  for (int dcase = 0; dcase < 4; ++dcase) {
    std::vector<std::pair<uint32_t, Rational>> pmf;
    switch (dcase) {
      case 0:
        pmf = {{1, Rational(1, 2)}, {2, Rational(1, 2)}};
        break;
      case 1:
        for (uint32_t j = 1; j <= 8; ++j) pmf.emplace_back(j, Rational(1, 8));
        break;
      case 2:
        pmf = {{2, Rational(1, 4)}, {3, Rational(1, 4)}, {7, Rational(1, 2)}};
        break;
      default:
        pmf = {{1, Rational(1, 3)}, {4, Rational(1, 3)}, {8, Rational(1, 3)}};
        break;
    }
    auto d = DiscreteDistribution::from_pmf(8, std::move(pmf));
    Rational sum_x, sum_x2;
    size_t family = 0;
    for (uint32_t c0 = 0; c0 < 8; ++c0)
      for (uint32_t c1 = 0; c1 < 8; ++c1)
        for (uint32_t c2 = 0; c2 < 8; ++c2)
          for (uint32_t c3 = 0; c3 < 8; ++c3) {
            FourWiseSignHash h(3, {c0, c1, c2, c3});
            Rational dplus;
            for (uint32_t j = 1; j <= 8; ++j)
              if (h.sign(j) > 0) dplus += d.mass_of(j);
            Rational x = abs_diff(dplus, Rational::one() - dplus);
            x *= x;
            sum_x += x;
            sum_x2 += x * x;
            ++family;
          }
    Rational fam(static_cast<unsigned long>(family), 1);
    Rational mean = sum_x / fam;
    CHECK(mean == l2_squared_exact(d));

    Rational pair_sum;
    for (uint32_t i = 1; i <= 8; ++i)
      for (uint32_t j = 1; j <= 8; ++j) {
        if (i == j) continue;
        Rational mi = d.mass_of(i), mj = d.mass_of(j);
        pair_sum += mi * mi * mj * mj;
      }
    Rational var = sum_x2 / fam - mean * mean;
    CHECK(var == pair_sum + pair_sum);
    CHECK(pair_sum <= mean * mean);
    CHECK(var <= mean * mean + mean * mean);
  }
}

TEST_CASE("l2 estimator concentrates on uniform and two-point instances") {
  Rng rng(19);
  const double eps = 0.25;
  struct Case {
    DiscreteDistribution d;
    double truth;
  };
  std::vector<Case> cases;
  cases.push_back({DiscreteDistribution::uniform(64), 1.0 / 64});
  cases.push_back({DiscreteDistribution::from_pmf(4, {{1, Rational(1, 2)}, {2, Rational(1, 2)}}),
                   0.5});
  for (auto& c : cases) {
    size_t hits = 0;
    const size_t kTrials = 200;
    for (size_t it = 0; it < kTrials; ++it) {
      OracleSession s(c.d, Rng::mix(it + 555));
      auto rep = estimate_l2_squared(s, eps, rng);
      CHECK(rep.queries == 2 * rep.repetitions);
      if (std::fabs(rep.estimate - c.truth) <= eps * c.truth) ++hits;
    }
    CHECK(hits >= kTrials * 70 / 100);
  }
}

TEST_CASE("l2 complement optimization halves the queries") {
  auto d = DiscreteDistribution::uniform(32);
  OracleSession s(d, 23);
  Rng rng(23);
  auto rep = estimate_l2_squared(s, 0.5, rng, /*optimize_complement=*/true);
  CHECK(rep.queries == rep.repetitions);
  CHECK(s.ledger().set_eval == rep.repetitions);
}

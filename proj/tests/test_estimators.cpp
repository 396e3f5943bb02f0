#include "condlab/estimators.hpp"

#include <cmath>

#include "condlab/adapters.hpp"
#include "condlab/instances.hpp"
#include "doctest.h"

using namespace condlab;

TEST_CASE("has_support_intersection gives one-query emptiness") {
  auto d2 = instances::geometric_hard(16, 2);
  OracleSession s(d2, 1);
  CHECK_FALSE(has_support_intersection(s, IndexSet({5, 6, 7, 8})));
  CHECK(has_support_intersection(s, IndexSet::universe(16)));
  CHECK_FALSE(has_support_intersection(s, IndexSet()));
  CHECK(s.ledger().cond == 3);
}

TEST_CASE("enumerate_up_to query counts trace the removal loop") {
  auto d = DiscreteDistribution::uniform_on(16, IndexSet({2, 5, 7, 9, 14}));
  OracleSession s(d, 2);

  // disjoint set, d=0: one query, empty set back
  auto r0 = enumerate_up_to(s, IndexSet({1, 3, 4}), 0);
  CHECK_FALSE(r0.more_than);
  CHECK(r0.members.empty());
  CHECK(r0.queries == 1);

  // |S & supp| = 3 = d: d+1 queries, exact set
  auto r1 = enumerate_up_to(s, IndexSet({2, 5, 7, 8}), 3);
  CHECK_FALSE(r1.more_than);
  CHECK(IndexSet(r1.members) == IndexSet({2, 5, 7}));
  CHECK(r1.queries == 4);

  // |S & supp| = d+1: exactly d+1 queries, MoreThan
  auto r2 = enumerate_up_to(s, IndexSet({2, 5, 7, 8}), 2);
  CHECK(r2.more_than);
  CHECK(r2.queries == 3);
}

TEST_CASE("constant-factor estimator: success interval, determinism, query budget") {
  const uint32_t n = 1 << 10;
  auto point = DiscreteDistribution::point_mass(n, 77);

  // Determinism: same seeds give the identical report.
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    OracleSession s1(point, seed * 7 + 1);
    Rng r1(seed);
    auto a = estimate_support_constant(s1, r1);
    OracleSession s2(point, seed * 7 + 1);
    Rng r2(seed);
    auto b = estimate_support_constant(s2, r2);
    CHECK(a.t_prime == b.t_prime);
    CHECK(a.estimate == b.estimate);
  }

  // Query budget: at most ceil(log2(log2 n + 1)) + 2 cond queries, always.
  uint64_t cap = static_cast<uint64_t>(std::ceil(std::log2(std::log2(double(n)) + 1))) + 2;
  size_t succ = 0;
  const size_t kTrials = 500;
  for (size_t t = 0; t < kTrials; ++t) {
    OracleSession s(point, Rng::mix(900 + t));
    Rng rng(Rng::mix(1700 + t));
    auto rep = estimate_support_constant(s, rng);
    CHECK(s.ledger().cond == rep.probe_queries);
    CHECK(rep.probe_queries <= cap);
    double est = rep.estimate;
    // success means s=1 lies in (2^t'/8, 4*2^t']
    double pow_t = est * std::sqrt(2.0);
    if (1.0 > pow_t / 8 && 1.0 <= 4 * pow_t) ++succ;
  }
  CHECK(succ >= kTrials * 52 / 100);
}

TEST_CASE("constant-factor estimator on full support") {
  const uint32_t n = 1 << 10;
  auto full = DiscreteDistribution::uniform(n);
  size_t succ = 0;
  const size_t kTrials = 2000;
  for (size_t t = 0; t < kTrials; ++t) {
    OracleSession s(full, Rng::mix(10000 + t));
    Rng rng(Rng::mix(20000 + t));
    auto rep = estimate_support_constant(s, rng);
    double pow_t = std::ldexp(1.0, int(rep.t_prime));
    if (double(n) > pow_t / 8 && double(n) <= 4 * pow_t) ++succ;
  }
  CHECK(succ >= kTrials * 52 / 100);
}

TEST_CASE("emptiness predicate is monotone for every hash at n=2^4") {
  // Exhaustive over the full affine family at w=4: the zero-preimage levels
  // are nested, so once a level misses every support element all deeper
  // levels do too.
  const uint32_t w = 4;
  IndexSet support({1, 4, 6, 13, 16});
  uint32_t m = (1u << w) - 1;
  for (uint64_t rbits = 0; rbits < (uint64_t{1} << (w * w)); ++rbits) {
    std::vector<uint32_t> rows(w);
    for (uint32_t i = 0; i < w; ++i) rows[i] = (rbits >> (i * w)) & m;
    for (uint32_t b = 0; b <= m; ++b) {
      BitAffineHash h(w, rows, b);
      bool was_empty = false;
      for (uint32_t t = 0; t <= w; ++t) {
        bool empty = true;
        for (uint32_t j : support)
          if (h.prefix_zero_member(t, j)) empty = false;
        if (was_empty) REQUIRE(empty);
        was_empty = empty;
      }
    }
  }
}

TEST_CASE("eps estimator returns the exact count on small supports") {
  const uint32_t n = 1 << 10;
  Rng gen(5);
  auto d = instances::uniform_random_support(n, 10, gen);
  // eps = 1: c/eps^2 = 576 >= 10, so t* = 0 and the answer is exact.
  OracleSession s(d, 42);
  Rng rng(43);
  auto rep = estimate_support_eps(s, 1.0, rng);
  REQUIRE(rep.t_star.has_value());
  CHECK(*rep.t_star == 0);
  CHECK(rep.exact_count == 10);
  CHECK(rep.estimate == 10.0);
  CHECK_FALSE(rep.guardrail_abort);
  CHECK_THROWS(estimate_support_eps(s, 0.0, rng));
  CHECK_THROWS(estimate_support_eps(s, 1.5, rng));
}

TEST_CASE("eps estimator query ledger stays within the descent budget") {
  const uint32_t n = 1 << 13;
  const double eps = 0.5;  // c/eps^2 = 2304
  const uint64_t budget = 2304;
  Rng gen(77);
  auto d = instances::uniform_random_support(n, 4000, gen);  // forces t* >= 1
  size_t succ = 0;
  const size_t kTrials = 40;
  for (size_t t = 0; t < kTrials; ++t) {
    OracleSession s(d, Rng::mix(3000 + t));
    Rng rng(Rng::mix(4000 + t));
    auto rep = estimate_support_eps(s, eps, rng);
    CHECK(rep.descent_queries <= 2 * budget);
    CHECK(s.ledger().cond == rep.probe_queries + rep.descent_queries);
    REQUIRE(rep.t_star.has_value());
    CHECK(*rep.t_star >= 1);
    if (std::fabs(rep.estimate - 4000.0) <= eps * 4000.0) ++succ;
  }
  CHECK(succ >= kTrials * 55 / 100);
}

TEST_CASE("split_emptiness and the bounded composition") {
  const uint32_t n = 1 << 10;
  Rng gen(99);
  auto d = instances::uniform_random_support(n, 37, gen);
  OracleSession s(d, 7);
  IndexSet everything = IndexSet::universe(n);
  CHECK(split_emptiness(s, everything, 32));
  CHECK_FALSE(split_emptiness(s, d.support_set().complement(n), 32));

  // Early exit: support inside the first block costs one query.
  auto d1 = DiscreteDistribution::point_mass(n, 3);
  OracleSession s1(d1, 8);
  uint64_t before = s1.ledger().bounded_total();
  CHECK(split_emptiness(s1, everything, 32));
  CHECK(s1.ledger().bounded_total() - before == 1);

  // Composition audit: constant-factor estimate entirely through k-bounded
  // cond queries, within (n/k) * (ceil(log2 log2 n) + 2) of them.
  OracleSession s2(d, 9);
  Rng rng(10);
  auto rep = estimate_support_constant_bounded(s2, 32, rng);
  CHECK(rep.t_prime >= 1);
  CHECK(s2.ledger().cond == 0);
  uint64_t cap = (n / 32) * (static_cast<uint64_t>(std::ceil(std::log2(std::log2(double(n))))) + 2);
  CHECK(s2.ledger().bounded_total() <= cap);
}

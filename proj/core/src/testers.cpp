#include "condlab/testers.hpp"

#include <cmath>

#include "condlab/hash.hpp"

namespace condlab {

IndexSet random_half_set(uint32_t n, Rng& rng) {
  std::vector<uint32_t> v;
  v.reserve(n / 2 + 8);
  for (uint32_t j = 1; j <= n; ++j)
    if (rng.coin()) v.push_back(j);
  return IndexSet(std::move(v));
}

Verdict test_equivalence(OracleSession& d, OracleSession& d_prime, Rng& rng) {
  if (d.dist().n() != d_prime.dist().n())
    throw std::invalid_argument("test_equivalence: mismatched domain sizes");
  for (int rep = 0; rep < 2; ++rep) {
    IndexSet s = random_half_set(d.dist().n(), rng);
    Rational a = std::get<SetMass>(d.set_eval(s)).q;
    Rational b = std::get<SetMass>(d_prime.set_eval(s)).q;
    if (a != b) return Verdict::Reject;
  }
  return Verdict::Accept;
}

Verdict test_grained(OracleSession& d, const mpz_class& m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("test_grained: m must be >= 1");
  for (int rep = 0; rep < 2; ++rep) {
    IndexSet s = random_half_set(d.dist().n(), rng);
    Rational q = std::get<SetMass>(d.set_eval(s)).q;
    if (!q.times_is_integer(m)) return Verdict::Reject;
  }
  return Verdict::Accept;
}

L2Report estimate_l2_squared(OracleSession& d, double eps, Rng& rng, bool optimize_complement) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("estimate_l2_squared: eps in (0, 1]");
  uint32_t n = d.dist().n();
  uint32_t w = 2;
  while ((uint64_t{1} << w) < n) ++w;  // pad the domain up to a power of two

  L2Report rep;
  rep.repetitions = static_cast<uint64_t>(std::ceil(4.0 / (eps * eps)));
  Rational sum;
  for (uint64_t it = 0; it < rep.repetitions; ++it) {
    FourWiseSignHash h = FourWiseSignHash::draw(w, rng);
    std::vector<uint32_t> plus, minus;
    plus.reserve(n / 2 + 8);
    minus.reserve(n / 2 + 8);
    for (uint32_t j = 1; j <= n; ++j)
      (h.sign(j) > 0 ? plus : minus).push_back(j);
    IndexSet splus{std::vector<uint32_t>(std::move(plus))};
    Rational dplus = std::get<SetMass>(d.set_eval(splus)).q;
    Rational dminus;
    if (optimize_complement) {
      dminus = Rational::one() - dplus;
    } else {
      IndexSet sminus{std::vector<uint32_t>(std::move(minus))};
      dminus = std::get<SetMass>(d.set_eval(sminus)).q;
    }
    Rational x = abs_diff(dplus, dminus);
    sum += x * x;
    rep.queries += optimize_complement ? 1 : 2;
  }
  rep.exact = sum / Rational::integer(rep.repetitions);
  rep.estimate = rep.exact.to_double();
  return rep;
}

Rational l2_squared_exact(const DiscreteDistribution& d) {
  std::vector<Rational> sq;
  sq.reserve(d.support_size());
  for (uint32_t j : d.support()) {
    const Rational& m = d.mass_of(j);
    sq.push_back(m * m);
  }
  return rational_sum(sq);
}

}  // namespace condlab

#include "condlab/estimators.hpp"

#include "condlab/adapters.hpp"

#include <algorithm>
#include <cmath>

namespace condlab {

namespace {

uint32_t log2_exact(uint32_t n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("estimator: n must be a power of two (pad with zero-mass elements)");
  return static_cast<uint32_t>(std::countr_zero(n));
}

class SessionEmptinessProbe final : public EmptinessProbe {
 public:
  explicit SessionEmptinessProbe(OracleSession& s) : s_(s) {}
  bool nonempty(const IndexSet& set) override { return !is_failure(s_.cond(set)); }

 private:
  OracleSession& s_;
};

class SessionSamplingProbe final : public SamplingProbe {
 public:
  explicit SessionSamplingProbe(OracleSession& s) : s_(s) {}
  std::optional<uint32_t> sample(const IndexSet& set) override {
    OracleResponse r = s_.cond(set);
    if (is_failure(r)) return std::nullopt;
    return std::get<Sample>(r).j;
  }

 private:
  OracleSession& s_;
};

class BoundedEmptinessProbe final : public EmptinessProbe {
 public:
  BoundedEmptinessProbe(OracleSession& s, uint32_t k) : s_(s), k_(k) {}
  bool nonempty(const IndexSet& set) override { return split_emptiness(s_, set, k_); }

 private:
  OracleSession& s_;
  uint32_t k_;
};

// All levels of h^{-1}_t(0) are slices of one evaluation table.
struct PreimageLevels {
  explicit PreimageLevels(const BitAffineHash& h) : w(h.w()), table(h.eval_table()) {}

  // Elements j in [2^w] with the last t bits of h(j) zero, ascending.
  IndexSet level(uint32_t t) const {
    uint32_t m = t >= 32 ? ~0u : (1u << t) - 1;
    std::vector<uint32_t> out;
    out.reserve(table.size() >> (t < 20 ? t : 20));
    for (uint32_t x = 0; x < table.size(); ++x)
      if ((table[x] & m) == 0) out.push_back(x + 1);
    return IndexSet(std::move(out));
  }

  uint32_t w;
  std::vector<uint32_t> table;
};

struct ConstantPhase {
  uint32_t t_prime;
  uint64_t probes;
};

// Binary search for the first t in [1, w] with empty intersection; t' = w+1
// when even level w intersects the support.
ConstantPhase find_t_prime(const PreimageLevels& lv, EmptinessProbe& probe) {
  uint32_t lo = 1, hi = lv.w + 1;
  uint64_t probes = 0;
  while (lo < hi) {
    uint32_t mid = lo + (hi - lo) / 2;
    ++probes;
    if (probe.nonempty(lv.level(mid)))
      lo = mid + 1;
    else
      hi = mid;
  }
  return {lo, probes};
}

}  // namespace

bool has_support_intersection(OracleSession& session, const IndexSet& s) {
  return !is_failure(session.cond(s));
}

EnumerationResult enumerate_up_to(SamplingProbe& probe, const IndexSet& s, uint64_t d) {
  EnumerationResult res{false, {}, 0};
  IndexSet work = s;
  for (;;) {
    ++res.queries;
    auto j = probe.sample(work);
    if (!j) return res;  // exact intersection found
    res.members.push_back(*j);
    if (res.members.size() > d) {
      res.more_than = true;
      return res;
    }
    work.remove(*j);
  }
}

EnumerationResult enumerate_up_to(OracleSession& session, const IndexSet& s, uint64_t d) {
  SessionSamplingProbe probe(session);
  return enumerate_up_to(probe, s, d);
}

EstimatorReport estimate_support_constant(uint32_t n, EmptinessProbe& probe, Rng& rng) {
  uint32_t w = log2_exact(n);
  PreimageLevels lv(BitAffineHash::draw(w, rng));
  auto [t_prime, probes] = find_t_prime(lv, probe);
  EstimatorReport rep;
  rep.t_prime = t_prime;
  rep.probe_queries = probes;
  rep.estimate = std::ldexp(1.0, static_cast<int>(t_prime)) / std::sqrt(2.0);
  return rep;
}

EstimatorReport estimate_support_constant(OracleSession& session, Rng& rng) {
  SessionEmptinessProbe probe(session);
  return estimate_support_constant(session.dist().n(), probe, rng);
}

EstimatorReport estimate_support_eps(uint32_t n, double eps, EmptinessProbe& eprobe,
                                     SamplingProbe& sprobe, Rng& rng) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("estimate_support_eps: eps in (0, 1]");
  uint32_t w = log2_exact(n);
  PreimageLevels lv(BitAffineHash::draw(w, rng));
  auto [t_prime, probes] = find_t_prime(lv, eprobe);

  EstimatorReport rep;
  rep.t_prime = t_prime;
  rep.probe_queries = probes;

  uint64_t budget = static_cast<uint64_t>(std::ceil(kEpsEstimatorC / (eps * eps)));
  IndexSet found;  // T^{j-1}: exact intersection at the level above
  for (uint32_t j = 1;; ++j) {
    if (j > budget) {  // none of t', ..., t' - c/eps^2 qualified
      rep.guardrail_abort = true;
      return rep;
    }
    if (t_prime < j) break;  // descended past level 0 (t* = 0 handled below)
    uint32_t t = t_prime - j;
    IndexSet level = lv.level(std::min(t, w)).set_minus(found);
    uint64_t d = budget - found.size();
    EnumerationResult er = enumerate_up_to(sprobe, level, d);
    rep.descent_queries += er.queries;
    if (er.more_than) {
      // X_t > c/eps^2, so t* = t+1 and the exact count there is |found|.
      rep.t_star = t + 1;
      rep.exact_count = found.size();
      rep.estimate = std::ldexp(static_cast<double>(found.size()), static_cast<int>(t + 1));
      return rep;
    }
    found = found.set_union(IndexSet(std::move(er.members)));
    if (t == 0) break;
  }
  // Reached level 0 with X_0 = |found| <= c/eps^2: the answer is exact.
  rep.t_star = 0;
  rep.exact_count = found.size();
  rep.estimate = static_cast<double>(found.size());
  return rep;
}

EstimatorReport estimate_support_eps(OracleSession& session, double eps, Rng& rng) {
  SessionEmptinessProbe eprobe(session);
  SessionSamplingProbe sprobe(session);
  return estimate_support_eps(session.dist().n(), eps, eprobe, sprobe, rng);
}

EstimatorReport estimate_support_constant_bounded(OracleSession& session, uint32_t k, Rng& rng) {
  BoundedEmptinessProbe probe(session, k);
  return estimate_support_constant(session.dist().n(), probe, rng);
}

}  // namespace condlab

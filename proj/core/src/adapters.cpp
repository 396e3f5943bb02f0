#include "condlab/adapters.hpp"

#include <algorithm>
#include <map>

namespace condlab {

std::vector<IndexSet> atom_partition(const IndexSet& base, const std::vector<IndexSet>& priors) {
  std::vector<IndexSet> cells{base};
  for (const IndexSet& a : priors) {
    std::vector<IndexSet> next;
    next.reserve(cells.size() * 2);
    for (const IndexSet& c : cells) {
      IndexSet in = c.intersect(a);
      IndexSet out = c.set_minus(a);
      if (!in.empty()) next.push_back(std::move(in));
      if (!out.empty()) next.push_back(std::move(out));
    }
    cells.swap(next);
  }
  return cells;
}

bool AdapterTranscript::laminar() const {
  for (size_t i = 0; i < inner_sets.size(); ++i)
    for (size_t j = i + 1; j < inner_sets.size(); ++j)
      if (!IndexSet::nested_or_disjoint(inner_sets[i], inner_sets[j])) return false;
  return true;
}

namespace {

class DirectSetEval final : public SetEvalOracleRef {
 public:
  DirectSetEval(OracleSession& s, AdapterTranscript& t) : s_(s), t_(t) {}
  Rational query(const IndexSet& set) override {
    Rational q = std::get<SetMass>(s_.set_eval(set)).q;
    t_.inner_sets.push_back(set);
    ++t_.inner_queries;
    t_.outer.emplace_back(set, q);
    return q;
  }

 private:
  OracleSession& s_;
  AdapterTranscript& t_;
};

class LaminarSetEval final : public SetEvalOracleRef {
 public:
  LaminarSetEval(OracleSession& s, AdapterTranscript& t) : s_(s), t_(t) {}

  Rational query(const IndexSet& set) override {
    if (auto it = cache_.find(set); it != cache_.end()) {
      t_.repeated_outer_set = true;
      t_.outer.emplace_back(set, it->second);
      return it->second;
    }
    if (priors_.size() >= kLaminarOuterCap)
      throw std::invalid_argument("laminarize_set_eval: outer query cap exceeded");
    std::vector<Rational> parts;
    for (IndexSet& atom : atom_partition(set, priors_)) {
      Rational q = std::get<SetMass>(s_.set_eval(atom)).q;
      ++t_.inner_queries;
      t_.inner_sets.push_back(std::move(atom));
      parts.push_back(std::move(q));
    }
    Rational total = rational_sum(parts);
    priors_.push_back(set);
    cache_.emplace(set, total);
    t_.outer.emplace_back(set, total);
    return total;
  }

 private:
  OracleSession& s_;
  AdapterTranscript& t_;
  std::vector<IndexSet> priors_;
  std::map<IndexSet, Rational> cache_;
};

class DirectCondEval final : public CondEvalOracleRef {
 public:
  DirectCondEval(OracleSession& s, AdapterTranscript& t, std::vector<CondEvalAnswer>& a)
      : s_(s), t_(t), answers_(a) {}

  CondEvalAnswer query(const IndexSet& set) override {
    OracleResponse r = s_.cond_eval(set);
    t_.inner_sets.push_back(set);
    ++t_.inner_queries;
    CondEvalAnswer a;
    if (is_failure(r)) {
      a.failed = true;
      t_.outer.emplace_back(set, Rational::zero());
    } else {
      const auto& se = std::get<SampleEval>(r);
      a = CondEvalAnswer{false, se.j, se.p, se.cp};
      t_.outer.emplace_back(set, se.p / se.cp);
    }
    answers_.push_back(a);
    return a;
  }

 private:
  OracleSession& s_;
  AdapterTranscript& t_;
  std::vector<CondEvalAnswer>& answers_;
};

class LaminarCondEval final : public CondEvalOracleRef {
 public:
  LaminarCondEval(OracleSession& s, AdapterTranscript& t, std::vector<CondEvalAnswer>& a)
      : s_(s), t_(t), answers_(a) {}

  CondEvalAnswer query(const IndexSet& set) override {
    if (std::find(priors_.begin(), priors_.end(), set) != priors_.end())
      t_.repeated_outer_set = true;  // re-queried fresh below
    if (priors_.size() >= kLaminarOuterCap)
      throw std::invalid_argument("laminarize_cond_eval: outer query cap exceeded");

    // Known singletons inside this set.
    std::vector<uint32_t> known;
    std::vector<Rational> known_mass;
    for (const auto& [e, m] : sampled_)
      if (set.contains(e)) {
        known.push_back(e);
        known_mass.push_back(m);
      }
    IndexSet exclusions{std::vector<uint32_t>(known)};

    // Atoms refine the prior sets and exclude the known singletons.
    std::vector<IndexSet> atoms;
    for (IndexSet& cell : atom_partition(set, priors_)) {
      IndexSet pruned = cell.set_minus(exclusions);
      if (!pruned.empty()) atoms.push_back(std::move(pruned));
    }

    std::vector<Rational> weights;  // atoms first, then known singletons
    std::vector<CondEvalAnswer> atom_answers;
    for (const IndexSet& atom : atoms) {
      OracleResponse r = s_.cond_eval(atom);
      ++t_.inner_queries;
      t_.inner_sets.push_back(atom);
      if (is_failure(r)) {
        weights.push_back(Rational::zero());
        atom_answers.push_back(CondEvalAnswer{true, 0, {}, {}});
      } else {
        const auto& se = std::get<SampleEval>(r);
        weights.push_back(se.p / se.cp);  // reconstructed D(atom)
        atom_answers.push_back(CondEvalAnswer{false, se.j, se.p, se.cp});
        sampled_.emplace(se.j, se.p);
      }
    }
    for (const Rational& m : known_mass) weights.push_back(m);

    Rational total = rational_sum(weights);
    priors_.push_back(set);
    t_.outer.emplace_back(set, total);

    CondEvalAnswer out;
    if (total.is_zero()) {
      out.failed = true;
    } else {
      size_t pick = exact_weighted_pick(weights, s_.rng());
      if (pick < atoms.size()) {
        out = CondEvalAnswer{false, atom_answers[pick].element, atom_answers[pick].p,
                             atom_answers[pick].p / total};
      } else {
        size_t e = pick - atoms.size();
        out = CondEvalAnswer{false, known[e], known_mass[e], known_mass[e] / total};
      }
    }
    answers_.push_back(out);
    return out;
  }

 private:
  OracleSession& s_;
  AdapterTranscript& t_;
  std::vector<CondEvalAnswer>& answers_;
  std::vector<IndexSet> priors_;
  std::map<uint32_t, Rational> sampled_;  // every inner-sampled element and its mass
};

}  // namespace

SetEvalRun run_set_eval_direct(const SetEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng) {
  SetEvalRun run;
  DirectSetEval oracle(session, run.transcript);
  run.output = algo(oracle, algo_rng);
  return run;
}

SetEvalRun laminarize_set_eval(const SetEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng) {
  SetEvalRun run;
  LaminarSetEval oracle(session, run.transcript);
  run.output = algo(oracle, algo_rng);
  return run;
}

CondEvalRun run_cond_eval_direct(const CondEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng) {
  CondEvalRun run;
  DirectCondEval oracle(session, run.transcript, run.answers);
  run.output = algo(oracle, algo_rng);
  return run;
}

CondEvalRun laminarize_cond_eval(const CondEvalAlgorithm& algo, OracleSession& session, Rng& algo_rng) {
  CondEvalRun run;
  LaminarCondEval oracle(session, run.transcript, run.answers);
  run.output = algo(oracle, algo_rng);
  return run;
}

std::vector<IndexSet> partition_blocks(const IndexSet& s, uint32_t k) {
  if (k == 0) throw std::invalid_argument("partition_blocks: k must be >= 1");
  std::vector<IndexSet> blocks;
  const auto& v = s.values();
  for (size_t off = 0; off < v.size(); off += k)
    blocks.emplace_back(std::vector<uint32_t>(v.begin() + off, v.begin() + std::min(v.size(), off + k)));
  return blocks;
}

bool split_emptiness(OracleSession& session, const IndexSet& s, uint32_t k) {
  if (k == 0) throw std::invalid_argument("split_emptiness: k must be >= 1");
  const auto& v = s.values();
  for (size_t off = 0; off < v.size(); off += k) {
    size_t take = std::min<size_t>(k, v.size() - off);
    IndexSet block(std::vector<uint32_t>(v.begin() + off, v.begin() + off + take));
    if (!is_failure(session.bounded(OracleKind::Cond, block, k))) return true;
  }
  return false;
}

OracleResponse simulate_bounded_cond_eval(OracleSession& session, const IndexSet& s, uint32_t k,
                                          Rng& rng) {
  if (s.empty()) throw std::invalid_argument("simulate_bounded_cond_eval: S must be nonempty");
  std::vector<IndexSet> blocks = partition_blocks(s, k);
  std::vector<Rational> block_mass;
  std::vector<CondEvalAnswer> block_answer;
  for (const IndexSet& b : blocks) {
    OracleResponse r = session.bounded(OracleKind::CondEval, b, k);
    if (is_failure(r)) {
      block_mass.push_back(Rational::zero());
      block_answer.push_back(CondEvalAnswer{true, 0, {}, {}});
    } else {
      const auto& se = std::get<SampleEval>(r);
      block_mass.push_back(se.p / se.cp);
      block_answer.push_back(CondEvalAnswer{false, se.j, se.p, se.cp});
    }
  }
  Rational total = rational_sum(block_mass);
  if (total.is_zero()) return Failure{};
  size_t pick = exact_weighted_pick(block_mass, rng);
  const CondEvalAnswer& a = block_answer[pick];
  return SampleEval{a.element, a.p, a.p / total};
}

}  // namespace condlab

#include "condlab/oracle.hpp"

namespace condlab {

const char* oracle_kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::Samp: return "samp";
    case OracleKind::Cond: return "cond";
    case OracleKind::CondPr: return "cond-pr";
    case OracleKind::CondEval: return "cond-eval";
    case OracleKind::SetEval: return "set-eval";
  }
  return "?";
}

std::optional<OracleKind> parse_oracle_kind(const std::string& name) {
  if (name == "samp") return OracleKind::Samp;
  if (name == "cond") return OracleKind::Cond;
  if (name == "cond-pr") return OracleKind::CondPr;
  if (name == "cond-eval") return OracleKind::CondEval;
  if (name == "set-eval") return OracleKind::SetEval;
  return std::nullopt;
}

uint64_t QueryLedger::total() const {
  return samp + cond + cond_pr + cond_eval + set_eval + bounded_total();
}

uint64_t QueryLedger::bounded_total() const {
  uint64_t t = 0;
  for (const auto& [k, c] : bounded) t += c;
  return t;
}

QueryLedger operator-(QueryLedger a, const QueryLedger& b) {
  a.samp -= b.samp;
  a.cond -= b.cond;
  a.cond_pr -= b.cond_pr;
  a.cond_eval -= b.cond_eval;
  a.set_eval -= b.set_eval;
  for (const auto& [k, c] : b.bounded) a.bounded[k] -= c;
  return a;
}

OracleResponse OracleSession::samp() {
  ++ledger_.samp;
  return Sample{dist_.sample(rng_)};
}

OracleResponse OracleSession::cond(const IndexSet& s) {
  ++ledger_.cond;
  auto j = dist_.sample_conditional(s, rng_);
  if (!j) return Failure{};
  return Sample{*j};
}

OracleResponse OracleSession::cond_pr(const IndexSet& s) {
  ++ledger_.cond_pr;
  auto j = dist_.sample_conditional(s, rng_);
  if (!j) return Failure{};
  return SamplePr{*j, dist_.mass_of(*j)};
}

OracleResponse OracleSession::cond_eval(const IndexSet& s) {
  ++ledger_.cond_eval;
  auto j = dist_.sample_conditional(s, rng_);
  if (!j) return Failure{};
  Rational p = dist_.mass_of(*j);
  return SampleEval{*j, p, p / dist_.mass(s)};
}

OracleResponse OracleSession::set_eval(const IndexSet& s) {
  ++ledger_.set_eval;
  return SetMass{dist_.mass(s)};
}

OracleResponse OracleSession::bounded(OracleKind kind, const IndexSet& s, uint32_t k) {
  if (s.size() > k) throw std::invalid_argument("bounded oracle: |S| exceeds k");
  ++ledger_.bounded[k];
  switch (kind) {
    case OracleKind::Samp: return Sample{dist_.sample(rng_)};
    case OracleKind::Cond: {
      auto j = dist_.sample_conditional(s, rng_);
      return j ? OracleResponse{Sample{*j}} : OracleResponse{Failure{}};
    }
    case OracleKind::CondPr: {
      auto j = dist_.sample_conditional(s, rng_);
      if (!j) return Failure{};
      return SamplePr{*j, dist_.mass_of(*j)};
    }
    case OracleKind::CondEval: {
      auto j = dist_.sample_conditional(s, rng_);
      if (!j) return Failure{};
      Rational p = dist_.mass_of(*j);
      return SampleEval{*j, p, p / dist_.mass(s)};
    }
    case OracleKind::SetEval: return SetMass{dist_.mass(s)};
  }
  throw std::logic_error("bounded: bad kind");
}

}  // namespace condlab

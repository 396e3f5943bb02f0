#include "condlab/distribution.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace condlab {

IndexSet::IndexSet(std::vector<uint32_t> indices) : v_(std::move(indices)) {
  std::sort(v_.begin(), v_.end());
  auto dup = std::adjacent_find(v_.begin(), v_.end());
  if (dup != v_.end()) throw std::invalid_argument("IndexSet: duplicate index");
  if (!v_.empty() && v_.front() == 0) throw std::invalid_argument("IndexSet: indices are 1-based");
}

IndexSet IndexSet::universe(uint32_t n) {
  std::vector<uint32_t> v(n);
  for (uint32_t i = 0; i < n; ++i) v[i] = i + 1;
  IndexSet s;
  s.v_ = std::move(v);
  return s;
}

bool IndexSet::contains(uint32_t j) const {
  return std::binary_search(v_.begin(), v_.end(), j);
}

size_t IndexSet::rank_of(uint32_t j) const {
  auto it = std::lower_bound(v_.begin(), v_.end(), j);
  if (it == v_.end() || *it != j) throw std::domain_error("rank_of: element not in set");
  return static_cast<size_t>(it - v_.begin()) + 1;
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
  IndexSet r;
  std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
  return r;
}

IndexSet IndexSet::set_minus(const IndexSet& o) const {
  IndexSet r;
  std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
  return r;
}

IndexSet IndexSet::set_union(const IndexSet& o) const {
  IndexSet r;
  std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
  return r;
}

IndexSet IndexSet::complement(uint32_t n) const {
  IndexSet r;
  r.v_.reserve(n - v_.size());
  size_t k = 0;
  for (uint32_t j = 1; j <= n; ++j) {
    if (k < v_.size() && v_[k] == j) {
      ++k;
    } else {
      r.v_.push_back(j);
    }
  }
  return r;
}

void IndexSet::remove(uint32_t j) {
  auto it = std::lower_bound(v_.begin(), v_.end(), j);
  if (it != v_.end() && *it == j) v_.erase(it);
}

bool IndexSet::nested_or_disjoint(const IndexSet& a, const IndexSet& b) {
  size_t common = a.intersect(b).size();
  return common == 0 || common == a.size() || common == b.size();
}

std::string IndexSet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v_[i]);
  }
  return s + "}";
}

DiscreteDistribution DiscreteDistribution::from_pmf(uint32_t n,
                                                    std::vector<std::pair<uint32_t, Rational>> entries) {
  if (n == 0) throw std::invalid_argument("DiscreteDistribution: empty domain");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  DiscreteDistribution d;
  d.n_ = n;
  for (auto& [idx, m] : entries) {
    if (idx == 0 || idx > n) throw std::domain_error("DiscreteDistribution: index out of [n]");
    if (!d.support_.empty() && d.support_.back() == idx)
      throw std::invalid_argument("DiscreteDistribution: duplicate index");
    if (m.is_zero()) continue;
    d.support_.push_back(idx);
    d.mass_.push_back(std::move(m));
  }
  d.uniform_support_ = !d.mass_.empty();
  d.all_dyadic_unit_ = true;
  for (const auto& m : d.mass_) {
    if (m != d.mass_.front()) d.uniform_support_ = false;
    if (!(m.den_is_pow2() && m.numerator() == 1)) d.all_dyadic_unit_ = false;
  }
  Rational total = d.uniform_support_
                       ? d.mass_.front() * Rational::integer(static_cast<unsigned long>(d.mass_.size()))
                       : rational_sum(d.mass_);
  if (total != Rational::one())
    throw std::invalid_argument("DiscreteDistribution: masses do not sum to 1");
  d.pos_.assign(n + 1, -1);
  for (size_t i = 0; i < d.support_.size(); ++i) d.pos_[d.support_[i]] = static_cast<int32_t>(i);
  return d;
}

DiscreteDistribution DiscreteDistribution::uniform(uint32_t n) {
  return uniform_on(n, IndexSet::universe(n));
}

DiscreteDistribution DiscreteDistribution::uniform_on(uint32_t n, IndexSet support) {
  if (support.empty()) throw std::invalid_argument("uniform_on: empty support");
  std::vector<std::pair<uint32_t, Rational>> entries;
  entries.reserve(support.size());
  Rational m(1, static_cast<unsigned long>(support.size()));
  for (uint32_t j : support) entries.emplace_back(j, m);
  return from_pmf(n, std::move(entries));
}

DiscreteDistribution DiscreteDistribution::point_mass(uint32_t n, uint32_t j) {
  return from_pmf(n, {{j, Rational::one()}});
}

void DiscreteDistribution::check_index(uint32_t j) const {
  if (j == 0 || j > n_) throw std::domain_error("index out of [n]");
}

const Rational& DiscreteDistribution::mass_of(uint32_t j) const {
  static const Rational kZero;
  check_index(j);
  int32_t p = pos_[j];
  return p < 0 ? kZero : mass_[static_cast<size_t>(p)];
}

std::vector<uint32_t> DiscreteDistribution::slice(const IndexSet& s) const {
  if (!s.empty() && s.max_element() > n_) throw std::domain_error("index out of [n]");
  std::vector<uint32_t> out;
  if (s.size() <= support_.size()) {
    for (uint32_t j : s) {
      int32_t p = pos_[j];
      if (p >= 0) out.push_back(static_cast<uint32_t>(p));
    }
  } else {
    const auto& sv = s.values();
    auto it = sv.begin();
    for (size_t i = 0; i < support_.size(); ++i) {
      it = std::lower_bound(it, sv.end(), support_[i]);
      if (it == sv.end()) break;
      if (*it == support_[i]) out.push_back(static_cast<uint32_t>(i));
    }
  }
  return out;
}

Rational DiscreteDistribution::mass(const IndexSet& s) const {
  auto sl = slice(s);
  std::vector<Rational> terms;
  terms.reserve(sl.size());
  if (uniform_support_ && !sl.empty())
    return mass_.front() * Rational::integer(static_cast<unsigned long>(sl.size()));
  for (uint32_t p : sl) terms.push_back(mass_[p]);
  return rational_sum(terms);
}

std::optional<uint32_t> DiscreteDistribution::sample_conditional(const IndexSet& s, Rng& rng) const {
  auto sl = slice(s);
  if (sl.empty()) return std::nullopt;  // D(S) = 0
  if (sl.size() == 1) return support_[sl[0]];
  if (uniform_support_) return support_[sl[rng.below(static_cast<uint64_t>(sl.size()))]];

  if (all_dyadic_unit_) {
    // Masses are 1/2^e; scaled weights are single bits of T = sum 2^(E-e).
    // Support order is not mass order in general, so sort by exponent.
    std::vector<uint32_t> order(sl);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return mass_[a].den_exp2() < mass_[b].den_exp2();
    });
    uint64_t max_e = mass_[order.back()].den_exp2();
    mpz_class total(0);
    mpz_class bit;
    for (uint32_t p : order) {
      mpz_set_ui(bit.get_mpz_t(), 1);
      mpz_mul_2exp(bit.get_mpz_t(), bit.get_mpz_t(), max_e - mass_[p].den_exp2());
      total += bit;
    }
    mpz_class u = rng.below(total);
    // Walk in decreasing-mass order; terminates within a few steps w.h.p.
    for (uint32_t p : order) {
      uint64_t shift = max_e - mass_[p].den_exp2();
      // u < 2^shift iff bit length <= shift
      if (mpz_sgn(u.get_mpz_t()) == 0 || mpz_sizeinbase(u.get_mpz_t(), 2) <= shift) return support_[p];
      mpz_set_ui(bit.get_mpz_t(), 1);
      mpz_mul_2exp(bit.get_mpz_t(), bit.get_mpz_t(), shift);
      u -= bit;
    }
    return support_[order.back()];  // unreachable
  }

  std::vector<Rational> weights;
  weights.reserve(sl.size());
  for (uint32_t p : sl) weights.push_back(mass_[p]);
  return support_[sl[exact_weighted_pick(weights, rng)]];
}

uint32_t DiscreteDistribution::sample(Rng& rng) const {
  return *sample_conditional(support_set(), rng);
}

DiscreteDistribution DiscreteDistribution::load(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  uint32_t n = 0;
  bool have_n = false;
  std::vector<std::pair<uint32_t, Rational>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first.rfind("n=", 0) == 0) {
      n = static_cast<uint32_t>(std::stoul(first.substr(2)));
      have_n = true;
      continue;
    }
    if (!have_n)
      throw std::invalid_argument("distribution file line " + std::to_string(lineno) +
                                  ": entry before n= header");
    uint32_t idx = 0;
    std::string frac;
    try {
      idx = static_cast<uint32_t>(std::stoul(first));
      if (!(ls >> frac)) throw std::invalid_argument("missing mass");
      entries.emplace_back(idx, Rational::parse(frac));
    } catch (const std::exception& e) {
      throw std::invalid_argument("distribution file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_n) throw std::invalid_argument("distribution file: missing n= header");
  try {
    return from_pmf(n, std::move(entries));
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("distribution file: ") + e.what());
  }
}

DiscreteDistribution DiscreteDistribution::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open distribution file " + path);
  return load(in);
}

void DiscreteDistribution::save(std::ostream& out) const {
  out << "n=" << n_ << "\n";
  for (size_t i = 0; i < support_.size(); ++i)
    out << support_[i] << " " << mass_[i].str() << "\n";
}

void DiscreteDistribution::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file " + path);
  save(out);
}

Rational total_variation(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.n() != b.n()) throw std::domain_error("total_variation: mismatched domains");
  IndexSet joint = a.support_set().set_union(b.support_set());
  std::vector<Rational> terms;
  terms.reserve(joint.size());
  for (uint32_t j : joint) terms.push_back(abs_diff(a.mass_of(j), b.mass_of(j)));
  return rational_sum(terms);
}

size_t exact_weighted_pick(std::span<const Rational> weights, Rng& rng) {
  if (weights.empty()) throw std::invalid_argument("exact_weighted_pick: no weights");
  bool all_dyadic = true;
  for (const auto& w : weights)
    if (!w.den_is_pow2()) all_dyadic = false;

  mpz_class total(0);
  std::vector<mpz_class> scaled(weights.size());
  if (all_dyadic) {
    uint64_t max_e = 0;
    for (const auto& w : weights)
      if (!w.is_zero()) max_e = std::max(max_e, w.den_exp2());
    for (size_t i = 0; i < weights.size(); ++i) {
      if (weights[i].is_zero()) continue;
      mpz_mul_2exp(scaled[i].get_mpz_t(), weights[i].numerator().get_mpz_t(),
                   max_e - weights[i].den_exp2());
      total += scaled[i];
    }
  } else {
    mpz_class lcm(1);
    for (const auto& w : weights) {
      if (w.is_zero()) continue;
      mpz_class d = w.denominator();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    }
    for (size_t i = 0; i < weights.size(); ++i) {
      if (weights[i].is_zero()) continue;
      mpz_class d = weights[i].denominator();
      mpz_divexact(scaled[i].get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
      scaled[i] *= weights[i].numerator();
      total += scaled[i];
    }
  }
  if (total == 0) throw std::invalid_argument("exact_weighted_pick: all weights zero");
  mpz_class u = rng.below(total);
  for (size_t i = 0; i < weights.size(); ++i) {
    if (u < scaled[i]) return i;
    u -= scaled[i];
  }
  return weights.size() - 1;  // unreachable
}

}  // namespace condlab

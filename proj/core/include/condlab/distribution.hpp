#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "condlab/rational.hpp"
#include "condlab/rng.hpp"

namespace condlab {

/// Sorted duplicate-free set of 1-based domain indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<uint32_t> indices);
  IndexSet(std::initializer_list<uint32_t> indices) : IndexSet(std::vector<uint32_t>(indices)) {}

  static IndexSet universe(uint32_t n);
  static IndexSet singleton(uint32_t j) { return IndexSet({j}); }

  size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  bool contains(uint32_t j) const;
  uint32_t operator[](size_t i) const { return v_[i]; }
  uint32_t min() const { return v_.front(); }
  uint32_t max_element() const { return v_.back(); }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<uint32_t>& values() const { return v_; }

  /// 1-based position of j in ascending order; throws if absent.
  size_t rank_of(uint32_t j) const;

  IndexSet intersect(const IndexSet& o) const;
  IndexSet set_minus(const IndexSet& o) const;
  IndexSet set_union(const IndexSet& o) const;
  IndexSet complement(uint32_t n) const;

  void remove(uint32_t j);  // no-op if absent

  /// True if the two sets are disjoint or one contains the other.
  static bool nested_or_disjoint(const IndexSet& a, const IndexSet& b);

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.v_ == b.v_; }
  friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.v_ < b.v_; }

  std::string str() const;

 private:
  std::vector<uint32_t> v_;
};

/// Exact probability mass function on [n].  Immutable after construction;
/// masses sum to exactly 1 and zero entries are dropped.
class DiscreteDistribution {
 public:
  /// Entries may arrive unsorted; duplicate indices are rejected.
  static DiscreteDistribution from_pmf(uint32_t n, std::vector<std::pair<uint32_t, Rational>> entries);

  static DiscreteDistribution uniform(uint32_t n);
  static DiscreteDistribution uniform_on(uint32_t n, IndexSet support);
  static DiscreteDistribution point_mass(uint32_t n, uint32_t j);

  uint32_t n() const { return n_; }
  size_t support_size() const { return support_.size(); }
  const std::vector<uint32_t>& support() const { return support_; }
  IndexSet support_set() const { return IndexSet(support_); }

  /// Mass of a single index (zero when outside the support); j in [1, n].
  const Rational& mass_of(uint32_t j) const;

  /// Exact D(S); validates S within [n].
  Rational mass(const IndexSet& s) const;

  /// Element of S with probability D(j)/D(S); nullopt iff D(S) = 0.
  std::optional<uint32_t> sample_conditional(const IndexSet& s, Rng& rng) const;

  /// Unconditioned draw.
  uint32_t sample(Rng& rng) const;

  bool uniform_on_support() const { return uniform_support_; }

  // Text format round-trip.  One entry per line "<index> <num>/<den>", header
  // "n=<domain size>", '#' comments and blank lines ignored.
  static DiscreteDistribution load(std::istream& in);
  static DiscreteDistribution load_file(const std::string& path);
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;

 private:
  DiscreteDistribution() = default;
  void check_index(uint32_t j) const;

  // Positions in support_/mass_ of the members of s & supp, ascending.
  std::vector<uint32_t> slice(const IndexSet& s) const;

  uint32_t n_ = 0;
  std::vector<uint32_t> support_;  // ascending
  std::vector<Rational> mass_;     // parallel to support_
  std::vector<int32_t> pos_;       // index -> support position, -1 if zero mass
  bool uniform_support_ = false;
  bool all_dyadic_unit_ = false;  // every mass is 1/2^e
};

/// Paper-convention total variation: sum of |D(i) - D'(i)| (no 1/2 factor).
Rational total_variation(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Index into weights with probability w_i / sum(w); at least one weight
/// must be positive.
size_t exact_weighted_pick(std::span<const Rational> weights, Rng& rng);

}  // namespace condlab

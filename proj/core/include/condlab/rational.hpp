#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace condlab {

/// Exact nonnegative rational.
///
/// The denominator is kept factored as odd_part * 2^exp2 so that dyadic
/// values (the geometric hard instances have denominators up to 2^(2^16-1))
/// never materialize the full power of two.  Always stored in lowest terms.
class Rational {
 public:
  Rational() : num_(0), den_odd_(1), den_exp2_(0) {}

  Rational(unsigned long num, unsigned long den) : num_(num), den_odd_(den), den_exp2_(0) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  Rational(mpz_class num, mpz_class den) : num_(std::move(num)), den_odd_(std::move(den)), den_exp2_(0) {
    if (den_odd_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (num_ < 0 || den_odd_ < 0) throw std::invalid_argument("Rational: negative value");
    normalize();
  }

  /// num / 2^exp2
  static Rational dyadic(mpz_class num, uint64_t exp2);

  static Rational integer(unsigned long v) { return Rational(v, 1); }
  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1, 1); }

  /// Parses "num/den" or a bare integer.
  static Rational parse(const std::string& text);

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_odd_ == 1 && den_exp2_ == 0; }
  bool is_integer() const { return den_odd_ == 1 && den_exp2_ == 0; }

  const mpz_class& numerator() const { return num_; }
  const mpz_class& den_odd() const { return den_odd_; }
  uint64_t den_exp2() const { return den_exp2_; }
  bool den_is_pow2() const { return den_odd_ == 1; }

  /// Materializes odd_part << exp2.  Huge for big dyadic exponents.
  mpz_class denominator() const;

  /// True iff m * (*this) is an integer, i.e. the denominator divides m.
  bool times_is_integer(const mpz_class& m) const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);  // throws if the result would be negative
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws on division by zero

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.den_exp2_ == b.den_exp2_ && a.num_ == b.num_ && a.den_odd_ == b.den_odd_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

  static int cmp(const Rational& a, const Rational& b);

  double to_double() const;
  std::string str() const;  // "num/den" (den in decimal), bare integer when den == 1

 private:
  void normalize();

  mpz_class num_;      // >= 0
  mpz_class den_odd_;  // odd, >= 1
  uint64_t den_exp2_;  // denominator = den_odd_ * 2^den_exp2_
};

/// |a - b| without the nonnegativity throw of operator-.
Rational abs_diff(const Rational& a, const Rational& b);

/// Pairwise (balanced) exact sum; keeps intermediate numerators small for
/// sorted dyadic inputs.
Rational rational_sum(std::span<const Rational> values);

}  // namespace condlab

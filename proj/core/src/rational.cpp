#include "condlab/rational.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace condlab {

namespace {

// 2-adic valuation; v must be nonzero.
uint64_t two_valuation(const mpz_class& v) {
  return mpz_scan1(v.get_mpz_t(), 0);
}

}  // namespace

void Rational::normalize() {
  if (num_ == 0) {
    den_odd_ = 1;
    den_exp2_ = 0;
    return;
  }
  // Move the denominator's factor of two into den_exp2_.
  if (mpz_even_p(den_odd_.get_mpz_t())) {
    uint64_t v = two_valuation(den_odd_);
    mpz_fdiv_q_2exp(den_odd_.get_mpz_t(), den_odd_.get_mpz_t(), v);
    den_exp2_ += v;
  }
  if (den_exp2_ > 0 && mpz_even_p(num_.get_mpz_t())) {
    uint64_t v = two_valuation(num_);
    uint64_t shift = v < den_exp2_ ? v : den_exp2_;
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
    den_exp2_ -= shift;
  }
  if (den_odd_ != 1) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_odd_.get_mpz_t());
    if (g != 1) {
      mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_odd_.get_mpz_t(), den_odd_.get_mpz_t(), g.get_mpz_t());
    }
  }
}

Rational Rational::dyadic(mpz_class num, uint64_t exp2) {
  Rational r;
  r.num_ = std::move(num);
  if (r.num_ < 0) throw std::invalid_argument("Rational: negative value");
  r.den_odd_ = 1;
  r.den_exp2_ = exp2;
  r.normalize();
  return r;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    mpz_class n;
    if (mpz_set_str(n.get_mpz_t(), text.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    return Rational(std::move(n), mpz_class(1));
  }
  mpz_class n, d;
  if (mpz_set_str(n.get_mpz_t(), text.substr(0, slash).c_str(), 10) != 0 ||
      mpz_set_str(d.get_mpz_t(), text.substr(slash + 1).c_str(), 10) != 0)
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  return Rational(std::move(n), std::move(d));
}

mpz_class Rational::denominator() const {
  mpz_class d;
  mpz_mul_2exp(d.get_mpz_t(), den_odd_.get_mpz_t(), den_exp2_);
  return d;
}

bool Rational::times_is_integer(const mpz_class& m) const {
  // Lowest terms: m*num/den integral iff den | m.
  if (den_exp2_ >= 64 * 1024 * 1024) return false;  // denominator certainly exceeds any sane m
  mpz_class d = denominator();
  return mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t()) != 0;
}

Rational& Rational::operator+=(const Rational& o) {
  if (o.num_ == 0) return *this;
  if (num_ == 0) return *this = o;
  uint64_t km = std::max(den_exp2_, o.den_exp2_);
  mpz_class lhs = num_ * o.den_odd_;
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), km - den_exp2_);
  mpz_class rhs = o.num_ * den_odd_;
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), km - o.den_exp2_);
  num_ = lhs + rhs;
  den_odd_ *= o.den_odd_;
  den_exp2_ = km;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (o.num_ == 0) return *this;
  uint64_t km = std::max(den_exp2_, o.den_exp2_);
  mpz_class lhs = num_ * o.den_odd_;
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), km - den_exp2_);
  mpz_class rhs = o.num_ * den_odd_;
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), km - o.den_exp2_);
  if (lhs < rhs) throw std::domain_error("Rational: negative result");
  num_ = lhs - rhs;
  den_odd_ *= o.den_odd_;
  den_exp2_ = km;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_odd_ *= o.den_odd_;
  den_exp2_ += o.den_exp2_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  // reciprocal of o: den_odd * 2^exp2 / num
  mpz_class onum = o.num_;  // copy survives aliasing (&o == this)
  num_ *= o.den_odd_;
  mpz_mul_2exp(num_.get_mpz_t(), num_.get_mpz_t(), o.den_exp2_);
  den_odd_ *= onum;
  normalize();
  return *this;
}

int Rational::cmp(const Rational& a, const Rational& b) {
  if (a == b) return 0;
  uint64_t km = std::max(a.den_exp2_, b.den_exp2_);
  mpz_class lhs = a.num_ * b.den_odd_;
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), km - a.den_exp2_);
  mpz_class rhs = b.num_ * a.den_odd_;
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), km - b.den_exp2_);
  return ::cmp(lhs, rhs) < 0 ? -1 : 1;
}

double Rational::to_double() const {
  if (num_ == 0) return 0.0;
  // Split the exponent out so dyadic values with huge exponents degrade to
  // 0.0/inf gracefully instead of overflowing GMP's double conversion.
  long nexp, dexp;
  double nd = mpz_get_d_2exp(&nexp, num_.get_mpz_t());
  double dd = mpz_get_d_2exp(&dexp, den_odd_.get_mpz_t());
  double e = static_cast<double>(nexp) - static_cast<double>(dexp) - static_cast<double>(den_exp2_);
  if (e < -2000) return 0.0;
  if (e > 2000) return std::numeric_limits<double>::infinity();
  return nd / dd * std::ldexp(1.0, static_cast<int>(e));
}

std::string Rational::str() const {
  if (is_integer()) return num_.get_str();
  return num_.get_str() + "/" + denominator().get_str();
}

Rational abs_diff(const Rational& a, const Rational& b) {
  return a >= b ? a - b : b - a;
}

Rational rational_sum(std::span<const Rational> values) {
  if (values.empty()) return Rational::zero();
  std::vector<Rational> level(values.begin(), values.end());
  while (level.size() > 1) {
    std::vector<Rational> next;
    next.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2) next.push_back(level.back());
    level.swap(next);
  }
  return level.front();
}

}  // namespace condlab

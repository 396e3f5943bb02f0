#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "condlab/rng.hpp"

namespace condlab {
namespace analysis {

struct BetaParams {
  double a = 1.0;  // alpha
  double b = 1.0;  // beta
};

/// psi(w) to >= 10 significant digits: recurrence lift to w >= 10, then the
/// asymptotic series.  w <= 0 is a domain error.
double digamma(double w);

/// ln Gamma(w) by the same recipe (Stirling series after lifting).
double log_gamma(double w);

double log_beta(double a, double b);

/// KL(Beta(p) || Beta(q)) via the closed form
///   ln B(q) - ln B(p) + (p.a-q.a) psi(p.a) + (p.b-q.b) psi(p.b)
///   + (q.a-p.a+q.b-p.b) psi(p.a+p.b).
double kl_beta(const BetaParams& p, const BetaParams& q);

struct GridScan {
  double max_value = 0.0;
  double arg_max = 0.0;
};

/// max |w psi(w)| over a uniform grid of (0, 1]; the bound is 3.
GridScan check_digamma_bound(size_t grid_points = 10000);

struct KlScanConfig {
  size_t trials = 10000;
  uint32_t weight_count = 40;  // geometric weights 1/2^j, j = 1..weight_count
  uint32_t max_log_cutoff = 5; // support cutoffs 2^x with x <= this
};

/// Samples nested laminar (C, U) pairs with geometric alpha-weights and
/// ratio constraints in [1, 2], evaluates kl_beta both ways, returns the max.
GridScan kl_bound_scan(const KlScanConfig& cfg, Rng& rng);

double gamma_draw(double shape, Rng& rng);

/// Floating Dirichlet draw via normalized Gamma variates.
std::vector<double> dirichlet_sample(const std::vector<double>& alphas, Rng& rng);

double beta_draw(double a, double b, Rng& rng);

struct BetaTailReport {
  double empirical_tail = 0.0;   // Pr[Y <= 1 - delta] estimate
  double chebyshev_bound = 0.0;  // 4 Var / delta^2
  double mc_sigma = 0.0;         // Monte Carlo standard error
  double mean = 0.0;
  double expected_mean = 0.0;
  bool within_bound = false;     // empirical <= bound + 3 sigma
};

/// Desk-scale form of the Beta tail bound: requires b <= a/c.
BetaTailReport beta_tail_check(double a, double b, double c, double delta, size_t samples, Rng& rng);

/// Regularized incomplete beta (the Beta(a, b) CDF).
double beta_cdf(double a, double b, double x);

struct IndependenceReport {
  bool inconclusive = false;  // empty conditioning bucket
  size_t bucket_samples = 0;
  double ks_statistic = 0.0;
  double ks_critical = 0.0;  // at the requested significance
  bool pass = false;
  BetaParams claimed;
};

/// Conditions Dirichlet draws on sum_{i in A} P_i falling within
/// [d - width, d + width], rescales sum_{i in B} P_i by the realized sum and
/// runs a one-sample K-S test against Beta(sum_B alpha, sum_{A\B} alpha).
IndependenceReport independence_property_check(const std::vector<double>& alphas,
                                               const std::vector<uint32_t>& a_set,
                                               const std::vector<uint32_t>& b_set, double d,
                                               double bucket_width, size_t samples,
                                               double significance, Rng& rng);

}  // namespace analysis
}  // namespace condlab

#pragma once

#include <cmath>

namespace lsnsum {

/// Skew normal SN(lambda, eps, omega): shape, location, scale.
struct SnParams {
  double lambda = 0.0;
  double eps = 0.0;
  double omega = 1.0;

  double beta() const { return lambda / std::sqrt(1.0 + lambda * lambda); }
};

/// Throws DomainError unless omega > 0 and all fields are finite.
void validate(const SnParams& p);

double sn_pdf(double x, const SnParams& p);
double sn_cdf(double x, const SnParams& p);
double sn_ccdf(double x, const SnParams& p);
double sn_log_cdf(double x, const SnParams& p);
double sn_log_ccdf(double x, const SnParams& p);

namespace detail {

// Standardized (eps = 0, omega = 1) skew normal tails. Each side is computed
// directly in the tail where it is small, so neither suffers cancellation.
double sn_std_log_cdf(double z, double lambda);
double sn_std_log_ccdf(double z, double lambda);
double sn_std_cdf(double z, double lambda);
double sn_std_ccdf(double z, double lambda);

}  // namespace detail

}  // namespace lsnsum

#pragma once

// Fenton-Wilkinson baseline: a single lognormal with the same first two
// moments as the correlated sum.

#include "lsnsum/corrstruct.hpp"
#include "lsnsum/fit.hpp"

namespace lsnsum {

struct LognormalParams {
  double mu_z = 0.0;
  double sigma2_z = 1.0;

  double sigma_z() const { return std::sqrt(sigma2_z); }
  double mu_db() const { return natural_to_db(mu_z); }
  double sigma_db() const { return natural_to_db(sigma_z()); }
};

LognormalParams fit_fw(const SumMoments& moments);
LognormalParams fit_fw(const LognormalSumSpec& spec);

double fw_pdf(double l, const LognormalParams& p);
double fw_cdf(double l, const LognormalParams& p);
double fw_ccdf(double l, const LognormalParams& p);
/// Exact probit-scale value (ln l - mu_z) / sigma_z.
double fw_probit(double l, const LognormalParams& p);

}  // namespace lsnsum

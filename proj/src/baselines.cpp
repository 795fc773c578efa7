#include "lsnsum/baselines.hpp"

#include "lsnsum/error.hpp"
#include "lsnsum/normal.hpp"

#include <cmath>

namespace lsnsum {

LognormalParams fit_fw(const SumMoments& moments) {
  LognormalParams p;
  p.sigma2_z = std::log1p(moments.ratio);
  p.mu_z = moments.log_mean - 0.5 * p.sigma2_z;
  if (!(p.sigma2_z > 0.0)) throw Error(ErrorCode::domain_error, "matched lognormal variance is not positive");
  return p;
}

LognormalParams fit_fw(const LognormalSumSpec& spec) {
  return fit_fw(sum_moments(build_natural(spec, FactorPolicy::semidefinite)));
}

double fw_pdf(double l, const LognormalParams& p) {
  if (!(l > 0.0)) return 0.0;
  const double s = p.sigma_z();
  return std_normal_pdf((std::log(l) - p.mu_z) / s) / (s * l);
}

double fw_cdf(double l, const LognormalParams& p) {
  if (!(l > 0.0)) return 0.0;
  return std_normal_cdf((std::log(l) - p.mu_z) / p.sigma_z());
}

double fw_ccdf(double l, const LognormalParams& p) {
  if (!(l > 0.0)) return 1.0;
  return std_normal_ccdf((std::log(l) - p.mu_z) / p.sigma_z());
}

double fw_probit(double l, const LognormalParams& p) { return (std::log(l) - p.mu_z) / p.sigma_z(); }

}  // namespace lsnsum

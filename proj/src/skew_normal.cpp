#include "lsnsum/skew_normal.hpp"

#include "lsnsum/error.hpp"
#include "lsnsum/normal.hpp"
#include "lsnsum/owens_t.hpp"

#include <cmath>
#include <sstream>

namespace lsnsum {

namespace {

const double kLogPi = std::log(kPi);

// cdf for z < 0, lambda > 0:
//   Phi(z) - 2 T(z, lambda) = exp(-g^2 / 2) / pi * integral_lambda^inf ...
double lower_tail_log(double g, double lambda) {
  const double scaled = detail::owens_upper_integral_scaled(g, lambda);
  return -0.5 * g * g * (1.0 + lambda * lambda) - kLogPi + std::log(scaled);
}

// ccdf for z >= 0, lambda > 0:
//   Q(z) + 2 T(z, lambda) = exp(-z^2 / 2) / pi * (J(z, inf) + J(z, lambda))
double upper_tail_integral(double z, double lambda) {
  return detail::owens_integral(z, INFINITY) + detail::owens_integral(z, lambda);
}

}  // namespace

void validate(const SnParams& p) {
  if (!(p.omega > 0.0) || !std::isfinite(p.omega) || !std::isfinite(p.lambda) || !std::isfinite(p.eps)) {
    std::ostringstream os;
    os << "skew normal parameters must be finite with omega > 0 (lambda=" << p.lambda << ", eps=" << p.eps
       << ", omega=" << p.omega << ")";
    throw Error(ErrorCode::domain_error, os.str());
  }
}

namespace detail {

double sn_std_cdf(double z, double lambda) {
  if (lambda < 0.0) return sn_std_ccdf(-z, -lambda);
  if (lambda == 0.0) return std_normal_cdf(z);
  if (z < 0.0) {
    const double g = -z;
    return std::exp(-0.5 * g * g * (1.0 + lambda * lambda)) / kPi * owens_upper_integral_scaled(g, lambda);
  }
  return 1.0 - sn_std_ccdf(z, lambda);
}

double sn_std_ccdf(double z, double lambda) {
  if (lambda < 0.0) return sn_std_cdf(-z, -lambda);
  if (lambda == 0.0) return std_normal_ccdf(z);
  if (z >= 0.0) return std::exp(-0.5 * z * z) / kPi * upper_tail_integral(z, lambda);
  return 1.0 - sn_std_cdf(z, lambda);
}

double sn_std_log_cdf(double z, double lambda) {
  if (lambda < 0.0) return sn_std_log_ccdf(-z, -lambda);
  if (lambda == 0.0) return log_std_normal_cdf(z);
  if (z < 0.0) return lower_tail_log(-z, lambda);
  return std::log1p(-sn_std_ccdf(z, lambda));
}

double sn_std_log_ccdf(double z, double lambda) {
  if (lambda < 0.0) return sn_std_log_cdf(-z, -lambda);
  if (lambda == 0.0) return log_std_normal_ccdf(z);
  if (z >= 0.0) return -0.5 * z * z - kLogPi + std::log(upper_tail_integral(z, lambda));
  return std::log1p(-sn_std_cdf(z, lambda));
}

}  // namespace detail

double sn_pdf(double x, const SnParams& p) {
  const double z = (x - p.eps) / p.omega;
  return 2.0 / p.omega * std_normal_pdf(z) * std_normal_cdf(p.lambda * z);
}

double sn_cdf(double x, const SnParams& p) { return detail::sn_std_cdf((x - p.eps) / p.omega, p.lambda); }

double sn_ccdf(double x, const SnParams& p) { return detail::sn_std_ccdf((x - p.eps) / p.omega, p.lambda); }

double sn_log_cdf(double x, const SnParams& p) { return detail::sn_std_log_cdf((x - p.eps) / p.omega, p.lambda); }

double sn_log_ccdf(double x, const SnParams& p) {
  return detail::sn_std_log_ccdf((x - p.eps) / p.omega, p.lambda);
}

}  // namespace lsnsum

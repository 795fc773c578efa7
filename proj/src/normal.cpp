#include "lsnsum/normal.hpp"

#include "lsnsum/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lsnsum {

namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;
constexpr double kLog2 = 0.693147180559945309417232121458176568;

// Beyond this the continued fraction is used for the Mills ratio.
constexpr double kMillsCfThreshold = 8.0;

double mills_ratio_cf(double x) {
  // R(x) = 1 / (x + 1/(x + 2/(x + 3/(x + ...)))), modified Lentz.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double a = static_cast<double>(k);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

// Rational approximation to the normal quantile (relative error ~1.2e-9),
// refined by the caller.
double quantile_guess(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_ccdf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double mills_ratio(double x) {
  if (x >= kMillsCfThreshold) return mills_ratio_cf(x);
  return std_normal_ccdf(x) / std_normal_pdf(x);
}

double log_std_normal_cdf(double x) {
  if (x < -kMillsCfThreshold) {
    const double g = -x;
    return -0.5 * g * g - kLogSqrt2Pi + std::log(mills_ratio_cf(g));
  }
  if (x <= 0.0) return std::log(std_normal_cdf(x));
  return std::log1p(-std_normal_ccdf(x));
}

double log_std_normal_ccdf(double x) { return log_std_normal_cdf(-x); }

double inv_std_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "normal quantile requires 0 < p < 1, got " << p;
    throw Error(ErrorCode::domain_error, os.str());
  }
  double x = quantile_guess(p);
  // Halley refinement; the residual uses whichever tail is exact.
  for (int it = 0; it < 2; ++it) {
    const double e = (p < 0.5) ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_ccdf(x);
    const double pdf = std_normal_pdf(x);
    if (pdf == 0.0) break;
    const double u = e / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double inv_std_normal_cdf_log(double log_p) {
  if (!(log_p < 0.0) || std::isnan(log_p)) {
    std::ostringstream os;
    os << "normal quantile requires log(p) < 0, got " << log_p;
    throw Error(ErrorCode::domain_error, os.str());
  }
  if (log_p == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::domain_error, "normal quantile of probability zero");
  }
  if (log_p > -kLog2) return inv_std_normal_cdf(std::exp(log_p));

  double x;
  if (log_p > -700.0) {
    x = inv_std_normal_cdf(std::exp(log_p));
  } else {
    // log cdf(-g) ~ -g^2/2 - log(g) - log sqrt(2 pi)
    double g = std::sqrt(-2.0 * log_p);
    for (int it = 0; it < 4; ++it) g = std::sqrt(2.0 * (-log_p - std::log(g) - kLogSqrt2Pi));
    x = -g;
  }
  // Newton on log cdf, whose derivative is 1 / mills_ratio(-x).
  for (int it = 0; it < 50; ++it) {
    const double step = (log_std_normal_cdf(x) - log_p) * mills_ratio(-x);
    x -= step;
    if (std::abs(step) <= 1e-15 * std::abs(x)) break;
  }
  return x;
}

}  // namespace lsnsum

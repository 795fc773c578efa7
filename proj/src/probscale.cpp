#include "lsnsum/probscale.hpp"

#include "lsnsum/error.hpp"
#include "lsnsum/normal.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace lsnsum {

namespace {
constexpr double kLogHalf = -0.693147180559945309417232121458176568;
}

double to_probit_scale(double cdf_value) { return inv_std_normal_cdf(cdf_value); }

double to_probit_scale(const TailProbability& p) {
  if (p.log_cdf <= kLogHalf) {
    if (std::isinf(p.log_cdf)) throw Error(ErrorCode::domain_error, "cdf saturates to 0");
    return inv_std_normal_cdf_log(p.log_cdf);
  }
  if (std::isinf(p.log_ccdf)) throw Error(ErrorCode::domain_error, "cdf saturates to 1");
  return -inv_std_normal_cdf_log(p.log_ccdf);
}

ProbitCurve probit_curve(std::function<double(double)> cdf) {
  return [cdf = std::move(cdf)](double x) {
    const double f = cdf(std::exp(x));
    if (!(f > 0.0 && f < 1.0)) {
      std::ostringstream os;
      os << "cdf saturates at x = " << x << " (F = " << f << ")";
      throw Error(ErrorCode::domain_error, os.str());
    }
    return inv_std_normal_cdf(f);
  };
}

ProbitCurve probit_curve(const LsnParams& p) {
  validate(p);
  return [p](double x) {
    // Work on the log abscissa directly so that |x| in the hundreds is fine.
    const SnParams sn = p.as_sn();
    TailProbability tp;
    tp.log_cdf = sn_log_cdf(x, sn);
    if (tp.log_cdf > kLogHalf) tp.log_ccdf = sn_log_ccdf(x, sn);
    return to_probit_scale(tp);
  };
}

TailSlopes scln_tail_slopes(const PrecisionSummary& ps) {
  return {1.0 / ps.max_diag_b_tilde, std::sqrt(ps.sum_b_tilde)};
}

TailSlopes lsn_tail_slopes(const LsnParams& p) {
  return {1.0 / p.omega, std::sqrt(1.0 + p.lambda * p.lambda) / p.omega};
}

double empirical_probit_slope(const ProbitCurve& curve, double x0, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::domain_error, "probe step must be positive");
  return (curve(x0 + h) - curve(x0 - h)) / (2.0 * h);
}

}  // namespace lsnsum

#include "lsnsum/log_skew_normal.hpp"

#include "lsnsum/error.hpp"
#include "lsnsum/normal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lsnsum {

void validate(const LsnParams& p) { validate(p.as_sn()); }

double lsn_pdf(double l, const LsnParams& p) {
  if (!(l > 0.0)) return 0.0;
  return sn_pdf(std::log(l), p.as_sn()) / l;
}

double lsn_cdf(double l, const LsnParams& p) {
  if (!(l > 0.0)) return 0.0;
  return sn_cdf(std::log(l), p.as_sn());
}

double lsn_ccdf(double l, const LsnParams& p) {
  if (!(l > 0.0)) return 1.0;
  return sn_ccdf(std::log(l), p.as_sn());
}

double lsn_log_cdf(double l, const LsnParams& p) {
  if (!(l > 0.0)) return -std::numeric_limits<double>::infinity();
  return sn_log_cdf(std::log(l), p.as_sn());
}

double lsn_log_ccdf(double l, const LsnParams& p) {
  if (!(l > 0.0)) return 0.0;
  return sn_log_ccdf(std::log(l), p.as_sn());
}

LsnMoments lsn_moments(const LsnParams& p) {
  validate(p);
  const double w2 = p.omega * p.omega;
  const double bw = p.beta() * p.omega;
  const double phi1 = std_normal_cdf(bw);
  const double phi2 = std_normal_cdf(2.0 * bw);

  LsnMoments m;
  m.mean = std::exp(std::log(2.0) + p.eps + 0.5 * w2 + std::log(phi1));
  // e^{w2} Phi(2bw) - 2 Phi(bw)^2, split so small w2 does not cancel.
  const double bracket = phi2 * std::expm1(w2) + (phi2 - 2.0 * phi1 * phi1);
  m.variance = 2.0 * std::exp(2.0 * p.eps + w2) * bracket;
  if (!std::isfinite(m.mean) || !std::isfinite(m.variance)) {
    std::ostringstream os;
    os << "log skew normal moments overflow (eps=" << p.eps << ", omega=" << p.omega << ")";
    throw Error(ErrorCode::overflow, os.str());
  }
  return m;
}

}  // namespace lsnsum

#pragma once

// Standard normal kernel. Lower and upper tails are evaluated separately so
// that both keep full relative accuracy; log-domain variants extend the
// usable range past the underflow of the plain probabilities.

namespace lsnsum {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405617640;

double std_normal_pdf(double x);
double std_normal_cdf(double x);
/// 1 - cdf(x), computed without cancellation.
double std_normal_ccdf(double x);

double log_std_normal_cdf(double x);
double log_std_normal_ccdf(double x);

/// Mills ratio ccdf(x) / pdf(x) for x >= 0; finite for arbitrarily large x.
double mills_ratio(double x);

/// Quantile of the standard normal. Throws DomainError unless 0 < p < 1.
double inv_std_normal_cdf(double p);

/// Quantile for a lower-tail probability given as log(p), log_p < 0. Works
/// far below the smallest representable p.
double inv_std_normal_cdf_log(double log_p);

}  // namespace lsnsum

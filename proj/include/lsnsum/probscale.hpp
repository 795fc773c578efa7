#pragma once

// Lognormal probability scale: x -> Phi^{-1}(F(e^x)). A lognormal CDF is a
// straight line on this scale; sums of lognormals and log skew normals are
// not, and their asymptotic slopes characterise the tails.

#include "lsnsum/corrstruct.hpp"
#include "lsnsum/log_skew_normal.hpp"

#include <functional>

namespace lsnsum {

struct TailSlopes {
  double upper = 0.0;  // x -> +inf
  double lower = 0.0;  // x -> -inf
};

/// Phi^{-1}(cdf_value). Throws DomainError outside (0, 1).
double to_probit_scale(double cdf_value);

/// A probability known through the logarithms of both tails.
struct TailProbability {
  double log_cdf = 0.0;
  double log_ccdf = 0.0;
};

/// Phi^{-1}(F), inverting whichever tail is smaller. Throws DomainError if
/// that tail is exactly zero.
double to_probit_scale(const TailProbability& p);

/// x (natural-log abscissa) -> probit-scale CDF value.
using ProbitCurve = std::function<double(double)>;

/// Wraps a plain CDF of the linear-domain variable. Saturation to 0 or 1
/// raises DomainError.
ProbitCurve probit_curve(std::function<double(double)> cdf);

/// Log-domain probit curve of a log skew normal; stays finite far into
/// both tails.
ProbitCurve probit_curve(const LsnParams& p);

/// Tail slopes of the correlated lognormal sum. lower = sqrt(sum B~_i),
/// upper = 1 / max_i B~(i, i).
TailSlopes scln_tail_slopes(const PrecisionSummary& ps);

/// upper = 1 / omega, lower = sqrt(1 + lambda^2) / omega.
TailSlopes lsn_tail_slopes(const LsnParams& p);

inline constexpr double kDefaultLowerProbe = -30.0;
inline constexpr double kDefaultUpperProbe = 30.0;
inline constexpr double kDefaultProbeStep = 1e-3;

/// Central-difference slope of a probit curve at x0.
double empirical_probit_slope(const ProbitCurve& curve, double x0, double h = kDefaultProbeStep);

}  // namespace lsnsum

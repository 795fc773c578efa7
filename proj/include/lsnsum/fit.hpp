#pragma once

// Analytic log skew normal fit to a sum of correlated lognormals: match the
// exact first two moments of the sum and its lower-tail slope on the
// lognormal probability scale.

#include "lsnsum/corrstruct.hpp"
#include "lsnsum/log_skew_normal.hpp"

#include <string>
#include <vector>

namespace lsnsum {

/// Exact mean and variance of sum_i exp(X_i).
struct SumMoments {
  double mean = 0.0;
  double variance = 0.0;
  /// variance / mean^2, computed without forming either.
  double ratio = 0.0;
  double log_mean = 0.0;
};

SumMoments sum_moments(const NaturalParams& np);

/// Variance-to-squared-mean ratio of the log skew normal whose shape is
/// lambda and whose lower-tail slope is sqrt(sum_b_tilde):
///
///   exp((1 + lambda^2) / S) * Phi(2 lambda / sqrt(S)) / (2 Phi(lambda / sqrt(S))^2) - 1
double lambda_equation_rhs(double lambda, double sum_b_tilde);

inline constexpr double kDefaultSolverTol = 1e-12;
inline constexpr int kMaxSolverIterations = 200;

struct LambdaSolution {
  double lambda = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Finds lambda >= 0 with lambda_equation_rhs(lambda, S) = target_ratio to
/// relative tolerance tol. Throws NoRoot when the target is below the
/// lambda = 0 value, NonConvergence after kMaxSolverIterations.
LambdaSolution solve_lambda(double target_ratio, double sum_b_tilde, double lambda0,
                            double tol = kDefaultSolverTol);

struct LambdaSeed {
  double value = 1.0;
  /// The upper-slope match had no real solution and 1 was used instead.
  bool fallback = false;
};

/// Starting point from matching both tail slopes:
/// sqrt(max_i B~(i,i)^2 * sum B~_i - 1).
LambdaSeed lambda_seed(const PrecisionSummary& ps);

struct FitOptions {
  double zero_tol = kDefaultZeroTol;
  double tol = kDefaultSolverTol;
  /// Drop the ln 2 term from the location, as the formula is commonly
  /// printed. The fitted mean is then off by a factor 2.
  bool literal_location = false;
};

struct MomentResiduals {
  double mean = 0.0;      // fitted / exact - 1
  double variance = 0.0;  // fitted / exact - 1
};

struct FitReport {
  LsnParams params;
  double lambda0 = 0.0;
  bool lambda0_fallback = false;
  int iterations = 0;
  double residual = 0.0;
  MomentResiduals moment_residuals;
  /// Relative gap between the fitted lower slope and sqrt(sum B~_i).
  double slope_match = 0.0;
  bool assumption_ok = true;
  std::vector<std::string> warnings;

  SumMoments moments;
  PrecisionSummary precision;
};

FitReport fit_lsn(const NaturalParams& np, const FitOptions& options = {});
FitReport fit_lsn(const LognormalSumSpec& spec, const FitOptions& options = {});

}  // namespace lsnsum

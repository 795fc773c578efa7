#pragma once

// Gaussian structure of a correlated lognormal sum: dB inputs, natural-unit
// mean/covariance, and the precision-matrix quantities that govern the
// tails of the sum.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace lsnsum {

/// ln(10)/10: converts dB to natural-log units.
inline constexpr double kXi = 2.302585092994045684017991454684364208 / 10.0;

inline double db_to_natural(double db) { return kXi * db; }
inline double natural_to_db(double nat) { return nat / kXi; }

/// Per-component dB mean/std plus correlation matrix.
struct LognormalSumSpec {
  std::vector<double> mu_db;
  std::vector<double> sigma_db;
  Eigen::MatrixXd corr;

  std::size_t size() const { return mu_db.size(); }

  /// Homogeneous case: n components sharing (mu_db, sigma_db) with a common
  /// pairwise correlation rho.
  static LognormalSumSpec equicorrelated(std::size_t n, double mu_db, double sigma_db, double rho);
};

/// Throws lsnsum::Error on ragged sizes, non-positive sigma, or a
/// correlation matrix that is not symmetric with unit diagonal and entries
/// in [-1, 1]. Positive definiteness is checked when factorizing.
void validate(const LognormalSumSpec& spec);

enum class FactorPolicy {
  /// Cholesky must succeed with strictly positive pivots.
  strict,
  /// Zero pivots are tolerated and their columns dropped (rank-reduced
  /// factor). Only suitable for sampling.
  semidefinite,
};

struct NaturalParams {
  Eigen::VectorXd mu;
  Eigen::MatrixXd m_cov;
  /// Lower-triangular factor L with L * L^T = m_cov.
  Eigen::MatrixXd chol;
  /// Number of non-zero columns of chol.
  std::size_t rank = 0;

  std::size_t size() const { return static_cast<std::size_t>(mu.size()); }
  double sigma2(std::size_t i) const { return m_cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)); }
};

NaturalParams build_natural(const LognormalSumSpec& spec, FactorPolicy policy = FactorPolicy::strict);

/// Natural parameters from an explicit mean vector and covariance matrix.
NaturalParams make_natural(Eigen::VectorXd mu, Eigen::MatrixXd m_cov, FactorPolicy policy = FactorPolicy::strict);

inline constexpr double kDefaultZeroTol = 1e-10;

struct PrecisionSummary {
  Eigen::MatrixXd b;
  Eigen::VectorXd row_sums;
  /// Indices (0-based, ascending) of rows whose sum is treated as non-zero.
  std::vector<std::size_t> reduced_index;
  Eigen::MatrixXd b_tilde;
  Eigen::VectorXd b_tilde_row_sums;
  double sum_b_tilde = 0.0;
  double max_diag_b_tilde = 0.0;
  /// Weights over the reduced index set; sums to one.
  Eigen::VectorXd w;
  bool assumption_ok = true;

  std::size_t reduced_size() const { return reduced_index.size(); }
};

/// A row sum counts as zero when |B_i| < zero_tol * max_j |B_j|.
PrecisionSummary precision_summary(const NaturalParams& np, double zero_tol = kDefaultZeroTol);

}  // namespace lsnsum

#include "lsnsum/corrstruct.hpp"

#include "lsnsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lsnsum {

namespace {

using Eigen::Index;

// Pivots at or below this fraction of the original diagonal are zero.
constexpr double kPivotTol = 64.0 * std::numeric_limits<double>::epsilon();

Eigen::MatrixXd factorize(const Eigen::MatrixXd& m, FactorPolicy policy, std::size_t& rank) {
  const Index n = m.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  rank = 0;
  for (Index j = 0; j < n; ++j) {
    double d = m(j, j);
    for (Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    const double scale = m(j, j);
    if (d <= kPivotTol * scale) {
      if (policy == FactorPolicy::strict) {
        std::ostringstream os;
        os << "covariance matrix is not positive definite (pivot " << j << " = " << d << ")";
        throw Error(ErrorCode::non_positive_definite, os.str());
      }
      if (d < -std::sqrt(std::numeric_limits<double>::epsilon()) * scale) {
        throw Error(ErrorCode::non_positive_definite, "covariance matrix is not positive semidefinite");
      }
      continue;  // column j stays zero
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    ++rank;
    for (Index i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::singular_matrix, std::string("cannot invert ") + what);
  }
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  Eigen::MatrixXd sym = 0.5 * (inv + inv.transpose());
  if (!sym.allFinite()) throw Error(ErrorCode::singular_matrix, std::string("inverse of ") + what + " is not finite");
  return sym;
}

}  // namespace

LognormalSumSpec LognormalSumSpec::equicorrelated(std::size_t n, double mu_db, double sigma_db, double rho) {
  LognormalSumSpec spec;
  spec.mu_db.assign(n, mu_db);
  spec.sigma_db.assign(n, sigma_db);
  const auto dim = static_cast<Index>(n);
  spec.corr = Eigen::MatrixXd::Constant(dim, dim, rho);
  spec.corr.diagonal().setOnes();
  return spec;
}

void validate(const LognormalSumSpec& spec) {
  const std::size_t n = spec.mu_db.size();
  if (n == 0) throw Error(ErrorCode::dimension_mismatch, "at least one component is required");
  if (spec.sigma_db.size() != n) {
    throw Error(ErrorCode::dimension_mismatch, "mu_db has " + std::to_string(n) + " entries but sigma_db has " +
                                                   std::to_string(spec.sigma_db.size()));
  }
  if (spec.corr.rows() != static_cast<Index>(n) || spec.corr.cols() != static_cast<Index>(n)) {
    throw Error(ErrorCode::dimension_mismatch, "correlation matrix must be " + std::to_string(n) + "x" +
                                                   std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(spec.mu_db[i])) {
      throw Error(ErrorCode::input_error, "mu_db[" + std::to_string(i) + "] is not finite");
    }
    if (!(spec.sigma_db[i] > 0.0) || !std::isfinite(spec.sigma_db[i])) {
      throw Error(ErrorCode::invalid_sigma, "sigma_db[" + std::to_string(i) + "] must be finite and > 0");
    }
  }
  for (Index i = 0; i < spec.corr.rows(); ++i) {
    if (std::abs(spec.corr(i, i) - 1.0) > 1e-12) {
      throw Error(ErrorCode::invalid_correlation, "correlation diagonal must be 1 (row " + std::to_string(i) + ")");
    }
    for (Index j = 0; j < i; ++j) {
      const double a = spec.corr(i, j);
      const double b = spec.corr(j, i);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::invalid_correlation, "correlation entries must be finite");
      }
      if (std::abs(a - b) > 1e-12) {
        throw Error(ErrorCode::invalid_correlation, "correlation matrix is not symmetric at (" + std::to_string(i) +
                                                        ", " + std::to_string(j) + ")");
      }
      if (std::abs(a) > 1.0) {
        throw Error(ErrorCode::invalid_correlation, "correlation entry outside [-1, 1] at (" + std::to_string(i) +
                                                        ", " + std::to_string(j) + ")");
      }
    }
  }
}

NaturalParams build_natural(const LognormalSumSpec& spec, FactorPolicy policy) {
  validate(spec);
  const auto n = static_cast<Index>(spec.size());
  NaturalParams np;
  np.mu.resize(n);
  Eigen::VectorXd sigma(n);
  for (Index i = 0; i < n; ++i) {
    np.mu(i) = db_to_natural(spec.mu_db[static_cast<std::size_t>(i)]);
    sigma(i) = db_to_natural(spec.sigma_db[static_cast<std::size_t>(i)]);
  }
  np.m_cov.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    np.m_cov(i, i) = sigma(i) * sigma(i);
    for (Index j = 0; j < i; ++j) {
      // Symmetrize the off-diagonal input so M is exactly symmetric.
      const double rho = 0.5 * (spec.corr(i, j) + spec.corr(j, i));
      np.m_cov(i, j) = np.m_cov(j, i) = rho * sigma(i) * sigma(j);
    }
  }
  np.chol = factorize(np.m_cov, policy, np.rank);
  return np;
}

NaturalParams make_natural(Eigen::VectorXd mu, Eigen::MatrixXd m_cov, FactorPolicy policy) {
  if (mu.size() == 0 || m_cov.rows() != mu.size() || m_cov.cols() != mu.size()) {
    throw Error(ErrorCode::dimension_mismatch, "mean vector and covariance matrix sizes disagree");
  }
  if (!m_cov.isApprox(m_cov.transpose(), 1e-12)) {
    throw Error(ErrorCode::invalid_correlation, "covariance matrix is not symmetric");
  }
  NaturalParams np;
  np.mu = std::move(mu);
  np.m_cov = 0.5 * (m_cov + m_cov.transpose());
  np.chol = factorize(np.m_cov, policy, np.rank);
  return np;
}

PrecisionSummary precision_summary(const NaturalParams& np, double zero_tol) {
  const Index n = np.m_cov.rows();
  if (np.rank != np.size()) {
    throw Error(ErrorCode::singular_matrix, "covariance matrix is rank deficient");
  }
  PrecisionSummary ps;

  // B = L^{-T} L^{-1}, reusing the stored factor.
  const Eigen::MatrixXd l_inv =
      np.chol.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  ps.b = l_inv.transpose() * l_inv;
  ps.b = 0.5 * (ps.b + ps.b.transpose());
  if (!ps.b.allFinite()) throw Error(ErrorCode::singular_matrix, "precision matrix is not finite");

  ps.row_sums = ps.b.rowwise().sum();
  const double max_abs = ps.row_sums.cwiseAbs().maxCoeff();
  for (Index i = 0; i < n; ++i) {
    if (max_abs > 0.0 && std::abs(ps.row_sums(i)) >= zero_tol * max_abs) {
      ps.reduced_index.push_back(static_cast<std::size_t>(i));
    }
  }
  if (ps.reduced_index.empty()) throw Error(ErrorCode::empty_reduced_set, "every precision row sum is zero");

  const auto nr = static_cast<Index>(ps.reduced_index.size());
  Eigen::MatrixXd m_tilde(nr, nr);
  for (Index a = 0; a < nr; ++a) {
    for (Index c = 0; c < nr; ++c) {
      m_tilde(a, c) = np.m_cov(static_cast<Index>(ps.reduced_index[static_cast<std::size_t>(a)]),
                               static_cast<Index>(ps.reduced_index[static_cast<std::size_t>(c)]));
    }
  }
  ps.b_tilde = (nr == n) ? ps.b : spd_inverse(m_tilde, "reduced covariance matrix");
  ps.b_tilde_row_sums = ps.b_tilde.rowwise().sum();
  ps.sum_b_tilde = ps.b_tilde_row_sums.sum();
  ps.max_diag_b_tilde = ps.b_tilde.diagonal().maxCoeff();
  if (!(ps.sum_b_tilde > 0.0)) {
    throw Error(ErrorCode::singular_matrix, "sum of reduced precision row sums is not positive");
  }

  // w = B~^{-1} 1 / (1^T B~^{-1} 1) and B~^{-1} = M~.
  const Eigen::VectorXd m_ones = m_tilde.rowwise().sum();
  ps.w = m_ones / m_ones.sum();

  Eigen::VectorXd w_pad = Eigen::VectorXd::Zero(n);
  for (Index a = 0; a < nr; ++a) w_pad(static_cast<Index>(ps.reduced_index[static_cast<std::size_t>(a)])) = ps.w(a);
  const Eigen::VectorXd bw = ps.b * w_pad;
  const double w_bw = w_pad.dot(bw);
  const double scale = ps.b.cwiseAbs().maxCoeff();
  ps.assumption_ok = true;
  std::size_t next = 0;
  for (Index i = 0; i < n; ++i) {
    if (next < ps.reduced_index.size() && ps.reduced_index[next] == static_cast<std::size_t>(i)) {
      ++next;
      continue;
    }
    // (e_i - w~)^T B w~
    const double v = bw(i) - w_bw;
    if (!(std::abs(v) > zero_tol * scale)) ps.assumption_ok = false;
  }
  return ps;
}

}  // namespace lsnsum

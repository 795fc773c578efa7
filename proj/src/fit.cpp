#include "lsnsum/fit.hpp"

#include "lsnsum/error.hpp"
#include "lsnsum/normal.hpp"
#include "lsnsum/probscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lsnsum {

namespace {

using Eigen::Index;

constexpr double kLog2 = 0.693147180559945309417232121458176568;

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

SumMoments sum_moments(const NaturalParams& np) {
  const Index n = np.mu.size();
  if (n == 0) throw Error(ErrorCode::dimension_mismatch, "empty parameter set");
  Eigen::VectorXd a(n);
  for (Index i = 0; i < n; ++i) a(i) = np.mu(i) + 0.5 * np.m_cov(i, i);

  const double log_max = std::log(std::numeric_limits<double>::max());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double expo = a(i) + a(j) + std::max(np.m_cov(i, j), 0.0);
      if (!(expo < log_max)) {
        std::ostringstream os;
        os << "covariance term (" << i << ", " << j << ") exponent " << expo << " is not representable";
        throw Error(ErrorCode::overflow, os.str());
      }
    }
  }

  const double a_max = a.maxCoeff();
  CompensatedSum scaled_mean;
  for (Index i = 0; i < n; ++i) scaled_mean.add(std::exp(a(i) - a_max));

  SumMoments out;
  out.log_mean = a_max + std::log(scaled_mean.value());

  CompensatedSum ratio;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      ratio.add(std::exp(a(i) + a(j) - 2.0 * out.log_mean) * std::expm1(np.m_cov(i, j)));
    }
  }
  out.ratio = ratio.value();
  out.mean = std::exp(out.log_mean);
  out.variance = out.ratio * std::exp(2.0 * out.log_mean);
  if (!(out.ratio > 0.0)) throw Error(ErrorCode::domain_error, "sum variance is not positive");
  return out;
}

double lambda_equation_rhs(double lambda, double sum_b_tilde) {
  const double root = std::sqrt(sum_b_tilde);
  const double x = lambda / root;
  const double log_term = (1.0 + lambda * lambda) / sum_b_tilde + log_std_normal_cdf(2.0 * x) - kLog2 -
                          2.0 * log_std_normal_cdf(x);
  return std::expm1(log_term);
}

LambdaSolution solve_lambda(double target_ratio, double sum_b_tilde, double lambda0, double tol) {
  if (!(target_ratio > 0.0) || !std::isfinite(target_ratio)) {
    throw Error(ErrorCode::domain_error, "target ratio must be positive and finite");
  }
  if (!(sum_b_tilde > 0.0) || !std::isfinite(sum_b_tilde)) {
    throw Error(ErrorCode::domain_error, "sum of reduced precision row sums must be positive");
  }
  const double abs_tol = tol * target_ratio;
  auto f = [&](double lambda) { return lambda_equation_rhs(lambda, sum_b_tilde) - target_ratio; };

  LambdaSolution sol;
  const double f_zero = f(0.0);
  if (std::abs(f_zero) <= abs_tol) {
    sol.residual = std::abs(f_zero);
    return sol;
  }
  if (f_zero > 0.0) {
    std::ostringstream os;
    os << "target ratio " << target_ratio << " is below the lambda = 0 value " << f_zero + target_ratio;
    throw Error(ErrorCode::no_root, os.str());
  }

  // Bracket: f(lo) < 0 < f(hi).
  double lo = 0.0;
  double f_lo = f_zero;
  double hi = (std::isfinite(lambda0) && lambda0 > 1.0) ? lambda0 : 1.0;
  double f_hi = f(hi);
  int iterations = 1;
  while (f_hi < 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi);
    if (++iterations > kMaxSolverIterations || !std::isfinite(hi)) {
      throw Error(ErrorCode::non_convergence, "could not bracket the shape parameter");
    }
  }
  if (std::isnan(f_hi)) throw Error(ErrorCode::non_convergence, "shape equation is not finite at the bracket");

  // Brent's method on [lo, hi].
  double a = lo, fa = f_lo;
  double b = hi, fb = f_hi;
  double c = a, fc = fa;
  double d = b - a, e = d;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (; iterations <= kMaxSolverIterations; ++iterations) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b);
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= abs_tol || std::abs(xm) <= tol1) {
      sol.lambda = b;
      sol.iterations = iterations;
      sol.residual = std::abs(fb);
      return sol;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw Error(ErrorCode::non_convergence,
              "shape equation did not converge in " + std::to_string(kMaxSolverIterations) + " iterations");
}

LambdaSeed lambda_seed(const PrecisionSummary& ps) {
  const double arg = ps.max_diag_b_tilde * ps.max_diag_b_tilde * ps.sum_b_tilde - 1.0;
  if (!std::isfinite(arg) || arg < 0.0) return {1.0, true};
  return {std::sqrt(arg), false};
}

FitReport fit_lsn(const NaturalParams& np, const FitOptions& options) {
  FitReport report;
  report.precision = precision_summary(np, options.zero_tol);
  report.moments = sum_moments(np);
  const double s = report.precision.sum_b_tilde;
  const double root_s = std::sqrt(s);

  const LambdaSeed seed = lambda_seed(report.precision);
  report.lambda0 = seed.value;
  report.lambda0_fallback = seed.fallback;
  report.assumption_ok = report.precision.assumption_ok;

  const LambdaSolution sol = solve_lambda(report.moments.ratio, s, seed.value, options.tol);
  report.iterations = sol.iterations;
  report.residual = sol.residual;

  LsnParams& p = report.params;
  p.lambda = sol.lambda;
  p.omega = std::sqrt((1.0 + p.lambda * p.lambda) / s);
  const double log_phi = log_std_normal_cdf(p.lambda / root_s);
  p.eps = report.moments.log_mean - 0.5 * p.omega * p.omega - log_phi - (options.literal_location ? 0.0 : kLog2);

  const LsnMoments fitted = lsn_moments(p);
  report.moment_residuals.mean = fitted.mean / report.moments.mean - 1.0;
  report.moment_residuals.variance = fitted.variance / report.moments.variance - 1.0;
  report.slope_match = std::abs(lsn_tail_slopes(p).lower - root_s) / root_s;

  if (!report.assumption_ok) {
    report.warnings.emplace_back(
        "upper-tail slope assumption fails for the reduced precision system; the seed may be poor");
  }
  if (seed.fallback) {
    report.warnings.emplace_back("tail-slope seed has no real solution; solver started from lambda0 = 1");
  }
  if (options.literal_location) {
    report.warnings.emplace_back("literal location formula in use; fitted mean is twice the exact mean");
  }
  return report;
}

FitReport fit_lsn(const LognormalSumSpec& spec, const FitOptions& options) {
  return fit_lsn(build_natural(spec, FactorPolicy::strict), options);
}

}  // namespace lsnsum

#include <catch2/catch_amalgamated.hpp>

#include "lsnsum/error.hpp"
#include "lsnsum/fit.hpp"
#include "lsnsum/normal.hpp"
#include "lsnsum/probscale.hpp"

#include <cmath>
#include <random>

using namespace lsnsum;
using Catch::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected lsnsum::Error");
  return ErrorCode::input_error;
}

}  // namespace

TEST_CASE("sum moments closed forms", "[fit]") {
  SECTION("single component") {
    const double mu = 0.3, s2 = 0.8;
    const auto m = sum_moments(make_natural(Eigen::VectorXd::Constant(1, mu), Eigen::MatrixXd::Constant(1, 1, s2)));
    REQUIRE(m.mean == Approx(std::exp(mu + s2 / 2)).epsilon(1e-15));
    REQUIRE(m.variance == Approx(std::exp(2 * mu) * std::exp(s2) * std::expm1(s2)).epsilon(1e-14));
    REQUIRE(m.ratio == Approx(std::expm1(s2)).epsilon(1e-14));
    REQUIRE(m.log_mean == Approx(mu + s2 / 2).epsilon(1e-15));
  }
  SECTION("two independent components") {
    const double s2 = 1.3;
    const auto m = sum_moments(make_natural(Eigen::Vector2d::Zero(), Eigen::Vector2d(s2, s2).asDiagonal()));
    REQUIRE(m.mean == Approx(2 * std::exp(s2 / 2)).epsilon(1e-15));
    REQUIRE(m.variance == Approx(2 * std::exp(s2) * std::expm1(s2)).epsilon(1e-14));
  }
  SECTION("two perfectly correlated components") {
    const double s2 = 0.9;
    const auto np = build_natural(LognormalSumSpec::equicorrelated(2, 0.0, natural_to_db(std::sqrt(s2)), 1.0),
                                  FactorPolicy::semidefinite);
    const auto m = sum_moments(np);
    REQUIRE(m.variance == Approx(4 * std::exp(s2) * std::expm1(s2)).epsilon(1e-14));
  }
  SECTION("large spreads stay finite") {
    const auto m = sum_moments(build_natural(LognormalSumSpec::equicorrelated(20, 0.0, 25.0, 0.5)));
    REQUIRE(std::isfinite(m.ratio));
    REQUIRE(std::isfinite(m.log_mean));
  }
  SECTION("overflow names the offending term") {
    const auto np = make_natural(Eigen::Vector2d(700.0, 0.0), Eigen::Vector2d(1.0, 1.0).asDiagonal());
    REQUIRE(code_of([&] { sum_moments(np); }) == ErrorCode::overflow);
  }
}

TEST_CASE("shape equation right-hand side", "[fit]") {
  REQUIRE(lambda_equation_rhs(1.0, 1.0) == Approx(4.1005453641382708477).epsilon(1e-14));
  for (double s2 : {0.2, 1.0, 4.0}) {
    REQUIRE(lambda_equation_rhs(0.0, 1.0 / s2) == Approx(std::expm1(s2)).epsilon(1e-14));
  }
  for (double s : {0.25, 1.0, 4.0}) {
    double prev = lambda_equation_rhs(0.0, s);
    for (double lambda = 0.1; lambda <= 50.0; lambda += 0.1) {
      const double v = lambda_equation_rhs(lambda, s);
      if (std::isinf(v)) break;  // overflow is the expected limit
      REQUIRE(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("solve_lambda", "[fit]") {
  SECTION("root at zero") {
    const auto sol = solve_lambda(std::expm1(1.0), 1.0, 1.0);
    REQUIRE(sol.lambda == 0.0);
  }
  SECTION("round trip") {
    REQUIRE(solve_lambda(4.1005453641382708477, 1.0, 1.0).lambda == Approx(1.0).margin(1e-8));
    for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
      for (double s : {0.25, 1.0, 4.0}) {
        const double target = lambda_equation_rhs(lambda, s);
        const auto sol = solve_lambda(target, s, 0.3);
        REQUIRE(std::abs(sol.lambda - lambda) <= 1e-8);
        REQUIRE(sol.residual <= 1e-12 * target);
      }
    }
  }
  SECTION("seed does not change the answer") {
    const double target = lambda_equation_rhs(2.2, 0.7);
    for (double seed : {0.0, 1.0, 2.2, 40.0}) REQUIRE(solve_lambda(target, 0.7, seed).lambda == Approx(2.2).margin(1e-9));
  }
  SECTION("errors") {
    REQUIRE(code_of([] { solve_lambda(0.1, 1.0, 1.0); }) == ErrorCode::no_root);
    REQUIRE(code_of([] { solve_lambda(-1.0, 1.0, 1.0); }) == ErrorCode::domain_error);
    REQUIRE(code_of([] { solve_lambda(1.0, 0.0, 1.0); }) == ErrorCode::domain_error);
  }
}

TEST_CASE("lambda seed", "[fit]") {
  SECTION("single unit component") {
    const auto s = lambda_seed(precision_summary(make_natural(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(1, 1))));
    REQUIRE(s.value == 0.0);
    REQUIRE_FALSE(s.fallback);
  }
  SECTION("two components, correlation 0.5") {
    Eigen::Matrix2d m;
    m << 1.0, 0.5, 0.5, 1.0;
    const auto s = lambda_seed(precision_summary(make_natural(Eigen::Vector2d::Zero(), m)));
    REQUIRE(s.value == Approx(1.1706281947614154276).epsilon(1e-14));
    REQUIRE_FALSE(s.fallback);
  }
  SECTION("fallback when the argument is negative") {
    const auto s = lambda_seed(precision_summary(make_natural(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, 4.0))));
    REQUIRE(s.value == 1.0);
    REQUIRE(s.fallback);
  }
}

TEST_CASE("single component fit is the input lognormal", "[fit]") {
  for (auto [mu_db, sigma_db] : {std::pair{0.0, 3.0}, {0.0, 6.0}, {0.0, 9.0}, {5.0, 12.0}, {-7.0, 1.0}}) {
    const auto r = fit_lsn(LognormalSumSpec::equicorrelated(1, mu_db, sigma_db, 0.0));
    REQUIRE(r.params.lambda <= 1e-8);
    REQUIRE(r.params.eps == Approx(db_to_natural(mu_db)).margin(1e-8));
    REQUIRE(r.params.omega == Approx(db_to_natural(sigma_db)).epsilon(1e-12));
    REQUIRE(r.params.eps_db() == Approx(mu_db).margin(1e-8));
    for (double x_db = mu_db - 4 * sigma_db; x_db <= mu_db + 4 * sigma_db; x_db += sigma_db / 4) {
      const double l = std::pow(10.0, x_db / 10.0);
      REQUIRE(std::abs(lsn_cdf(l, r.params) - std_normal_cdf((x_db - mu_db) / sigma_db)) <= 1e-10);
    }
  }
}

TEST_CASE("fit of two correlated 3 dB components", "[fit]") {
  const auto r = fit_lsn(LognormalSumSpec::equicorrelated(2, 0.0, 3.0, 0.7));
  const auto lm = lsn_moments(r.params);
  REQUIRE(lm.mean == Approx(r.moments.mean).epsilon(1e-9));
  REQUIRE(lm.variance == Approx(r.moments.variance).epsilon(1e-9));
  REQUIRE(r.params.lambda > 0.0);
  REQUIRE(r.residual <= 1e-12 * r.moments.ratio);
}

TEST_CASE("fit of twenty 9 dB components at correlation 0.3", "[fit]") {
  const auto r = fit_lsn(LognormalSumSpec::equicorrelated(20, 0.0, 9.0, 0.3));
  REQUIRE(r.params.lambda > 0.0);
  REQUIRE(lsn_tail_slopes(r.params).lower == Approx(std::sqrt(r.precision.sum_b_tilde)).epsilon(1e-10));
  REQUIRE(r.slope_match <= 1e-10);
  REQUIRE(r.lambda0_fallback);
  REQUIRE_FALSE(r.warnings.empty());
}

TEST_CASE("literal location drops ln 2", "[fit]") {
  const auto spec = LognormalSumSpec::equicorrelated(4, 1.0, 6.0, 0.5);
  const auto exact = fit_lsn(spec);
  FitOptions opts;
  opts.literal_location = true;
  const auto literal = fit_lsn(spec, opts);
  REQUIRE(literal.params.lambda == exact.params.lambda);
  REQUIRE(literal.params.omega == exact.params.omega);
  REQUIRE(literal.params.eps - exact.params.eps == Approx(std::log(2.0)).epsilon(1e-14));
  REQUIRE(literal.moment_residuals.mean == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit properties on random homogeneous specs", "[fit][property]") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> nd(1, 20);
  std::uniform_real_distribution<double> sd(1.0, 12.0), rd(0.0, 0.95), md(-10.0, 10.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto spec = LognormalSumSpec::equicorrelated(static_cast<std::size_t>(nd(rng)), md(rng), sd(rng), rd(rng));
    const auto r = fit_lsn(spec);
    REQUIRE(std::abs(r.moment_residuals.mean) <= 1e-8);
    REQUIRE(std::abs(r.moment_residuals.variance) <= 1e-8);
    REQUIRE(r.slope_match <= 1e-10);
    REQUIRE(r.params.lambda >= 0.0);

    // Shifting every mean by c dB shifts only the location.
    const double c = md(rng);
    auto shifted = spec;
    for (double& m : shifted.mu_db) m += c;
    const auto rs = fit_lsn(shifted);
    REQUIRE(rs.params.lambda == Approx(r.params.lambda).epsilon(1e-9).margin(1e-9));
    REQUIRE(rs.params.omega == Approx(r.params.omega).epsilon(1e-12));
    REQUIRE(rs.params.eps_db() - r.params.eps_db() == Approx(c).margin(1e-8));
  }
}

TEST_CASE("lambda grows with the spread", "[fit][property]") {
  for (std::size_t n : {2u, 8u, 20u}) {
    for (double rho : {0.0, 0.3, 0.7, 0.9}) {
      double prev = -1.0;
      for (double sigma : {1.0, 3.0, 6.0, 9.0, 12.0}) {
        const double lambda = fit_lsn(LognormalSumSpec::equicorrelated(n, 0.0, sigma, rho)).params.lambda;
        INFO("n=" << n << " rho=" << rho << " sigma=" << sigma);
        REQUIRE(lambda > prev);
        prev = lambda;
      }
    }
  }
}

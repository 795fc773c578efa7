#include <catch2/catch_amalgamated.hpp>

#include "lsnsum/error.hpp"
#include "lsnsum/log_skew_normal.hpp"
#include "lsnsum/normal.hpp"
#include "lsnsum/probscale.hpp"

#include <cmath>

using namespace lsnsum;
using Catch::Approx;

TEST_CASE("probit transform of simple values", "[probscale]") {
  REQUIRE(to_probit_scale(0.5) == 0.0);
  REQUIRE(to_probit_scale(std_normal_cdf(1.25)) == Approx(1.25).epsilon(1e-14));
  REQUIRE_THROWS_AS(to_probit_scale(0.0), Error);
  REQUIRE_THROWS_AS(to_probit_scale(1.0), Error);

  REQUIRE(to_probit_scale(TailProbability{log_std_normal_cdf(-40.0), 0.0}) == Approx(-40.0).epsilon(1e-12));
  REQUIRE(to_probit_scale(TailProbability{0.0, log_std_normal_ccdf(37.0)}) == Approx(37.0).epsilon(1e-12));
  REQUIRE_THROWS_AS(to_probit_scale(TailProbability{-INFINITY, 0.0}), Error);
}

TEST_CASE("lognormal cdf is a straight line on the probit scale", "[probscale]") {
  const double mu = 0.3, sigma = 1.7;
  const ProbitCurve curve = probit_curve([&](double l) { return std_normal_cdf((std::log(l) - mu) / sigma); });
  for (double x : {-4.0, -1.0, 0.3, 2.0, 5.0}) {
    REQUIRE(curve(x) == Approx((x - mu) / sigma).epsilon(1e-12).margin(1e-14));
    REQUIRE(empirical_probit_slope(curve, x) == Approx(1.0 / sigma).epsilon(1e-7));
  }
  REQUIRE_THROWS_AS(curve(200.0), Error);
}

TEST_CASE("log skew normal probit curve at lambda = 0", "[probscale]") {
  const LsnParams p{0.0, 0.5, 2.0};
  const ProbitCurve curve = probit_curve(p);
  for (double x : {-80.0, -10.0, 0.5, 10.0, 80.0}) {
    REQUIRE(curve(x) == Approx((x - 0.5) / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("scln tail slopes", "[probscale]") {
  SECTION("single component") {
    const double sigma = 0.8;
    const auto ps = precision_summary(make_natural(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, sigma * sigma)));
    const TailSlopes s = scln_tail_slopes(ps);
    REQUIRE(s.lower == Approx(1.0 / sigma).epsilon(1e-15));
    // Upper slope as printed is 1 / B~(1,1) = sigma^2.
    REQUIRE(s.upper == Approx(sigma * sigma).epsilon(1e-15));
  }
  SECTION("two components, correlation 0.5") {
    Eigen::Matrix2d m;
    m << 1.0, 0.5, 0.5, 1.0;
    const TailSlopes s = scln_tail_slopes(precision_summary(make_natural(Eigen::Vector2d::Zero(), m)));
    REQUIRE(s.lower == Approx(1.1547005383792515290).epsilon(1e-14));
    REQUIRE(s.upper == Approx(0.75).epsilon(1e-14));
  }
}

TEST_CASE("lsn tail slopes", "[probscale]") {
  const TailSlopes a = lsn_tail_slopes({0.0, 0.0, 1.6});
  REQUIRE(a.lower == Approx(1.0 / 1.6));
  REQUIRE(a.upper == Approx(1.0 / 1.6));
  const TailSlopes b = lsn_tail_slopes({1.0, 0.0, 1.0});
  REQUIRE(b.lower == Approx(std::sqrt(2.0)).epsilon(1e-15));
  REQUIRE(b.upper == 1.0);
  for (double lambda : {0.0, 0.4, 3.0}) {
    const TailSlopes s = lsn_tail_slopes({lambda, 1.0, 0.7});
    REQUIRE(s.lower >= s.upper);
  }
}

TEST_CASE("empirical slopes of a log skew normal approach the asymptotes", "[probscale]") {
  const LsnParams p{2.0, 0.0, 1.0};
  const ProbitCurve curve = probit_curve(p);
  const TailSlopes s = lsn_tail_slopes(p);
  double prev_gap = INFINITY;
  for (double x0 : {-10.0, -20.0, -30.0}) {
    const double gap = std::abs(empirical_probit_slope(curve, x0) - s.lower);
    REQUIRE(gap < prev_gap);
    prev_gap = gap;
  }
  REQUIRE(prev_gap / s.lower < 0.01);
  prev_gap = INFINITY;
  for (double x0 : {10.0, 20.0, 30.0}) {
    const double gap = std::abs(empirical_probit_slope(curve, x0) - s.upper);
    REQUIRE(gap < prev_gap);
    prev_gap = gap;
  }
  REQUIRE(prev_gap / s.upper < 0.01);
  REQUIRE_THROWS_AS(empirical_probit_slope(curve, 0.0, 0.0), Error);
}

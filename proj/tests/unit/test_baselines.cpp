#include <catch2/catch_amalgamated.hpp>

#include "lsnsum/baselines.hpp"
#include "lsnsum/normal.hpp"
#include "lsnsum/probscale.hpp"

#include <cmath>
#include <random>

using namespace lsnsum;
using Catch::Approx;

TEST_CASE("fw on a single component returns the input", "[fw]") {
  const auto p = fit_fw(LognormalSumSpec::equicorrelated(1, 2.0, 7.0, 0.0));
  REQUIRE(p.mu_db() == Approx(2.0).epsilon(1e-13));
  REQUIRE(p.sigma_db() == Approx(7.0).epsilon(1e-13));
  for (double x_db = -20.0; x_db <= 24.0; x_db += 2.2) {
    const double l = std::pow(10.0, x_db / 10.0);
    REQUIRE(std::abs(fw_cdf(l, p) - std_normal_cdf((x_db - 2.0) / 7.0)) <= 1e-12);
  }
}

TEST_CASE("fw for two independent unit components", "[fw]") {
  const double s = natural_to_db(1.0);
  const auto p = fit_fw(LognormalSumSpec::equicorrelated(2, 0.0, s, 0.0));
  REQUIRE(p.sigma2_z == Approx(0.62011450695827752463).epsilon(1e-14));
  REQUIRE(p.mu_z == Approx(0.88308992708080654710).epsilon(1e-14));
}

TEST_CASE("fw cdf basics", "[fw]") {
  const LognormalParams p{0.7, 1.9};
  REQUIRE(fw_cdf(std::exp(0.7), p) == Approx(0.5).epsilon(1e-15));
  REQUIRE(fw_cdf(0.0, p) == 0.0);
  REQUIRE(fw_cdf(-3.0, p) == 0.0);
  REQUIRE(fw_ccdf(0.0, p) == 1.0);
  REQUIRE(fw_cdf(1e-200, p) < 1e-100);
  REQUIRE(fw_cdf(1e200, p) == 1.0);
  REQUIRE(fw_ccdf(1e20, p) > 0.0);
  REQUIRE(fw_pdf(0.0, p) == 0.0);
  const double h = 1e-6;
  for (double l : {0.1, 1.0, 4.0}) {
    REQUIRE((fw_cdf(l + h, p) - fw_cdf(l - h, p)) / (2 * h) == Approx(fw_pdf(l, p)).epsilon(1e-6));
    REQUIRE(fw_probit(l, p) == Approx(to_probit_scale(fw_cdf(l, p))).epsilon(1e-12).margin(1e-14));
  }
}

TEST_CASE("fw reproduces the sum moments", "[fw][property]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> nd(1, 20);
  std::uniform_real_distribution<double> sd(1.0, 12.0), rd(0.0, 0.95), md(-10.0, 10.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto spec = LognormalSumSpec::equicorrelated(static_cast<std::size_t>(nd(rng)), md(rng), sd(rng), rd(rng));
    const auto np = build_natural(spec);
    const SumMoments m = sum_moments(np);
    const LognormalParams p = fit_fw(spec);
    const double mean = std::exp(p.mu_z + p.sigma2_z / 2);
    const double var = std::exp(2 * p.mu_z + p.sigma2_z) * std::expm1(p.sigma2_z);
    REQUIRE(mean == Approx(m.mean).epsilon(1e-12));
    REQUIRE(var == Approx(m.variance).epsilon(1e-12));

    // The matched line sits between the sum's tail slopes (heterogeneous
    // tails only; a single component coincides with both).
    if (spec.size() > 1) {
      const double slope = 1.0 / p.sigma_z();
      REQUIRE(slope < std::sqrt(precision_summary(np).sum_b_tilde));
    }
  }
}

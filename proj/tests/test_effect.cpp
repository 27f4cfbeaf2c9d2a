#include <doctest.h>

#include <cmath>

#include "rctv/effect.hpp"
#include "rctv/rng.hpp"

using namespace rctv;

// Likelihood recovery for three published trials, frozen against an
// arbitrary-precision oracle.
TEST_CASE("likelihood recovery from published intervals") {
  SUBCASE("RR 0.76 (0.55, 1.04)") {
    auto e = EffectEstimate::from_ci(EffectScale::RR, 0.76, 0.55, 1.04);
    CHECK(e.log_mean == doctest::Approx(-0.27443684570176029).epsilon(1e-12));
    CHECK(e.log_se == doctest::Approx(0.16251770923698897).epsilon(1e-12));
    CHECK(two_sided_p(e) == doctest::Approx(0.09128497006).epsilon(1e-9));
    CHECK(e.warnings.empty());
  }
  SUBCASE("HR 0.75 (0.55, 1.02)") {
    auto e = EffectEstimate::from_ci(EffectScale::HR, 0.75, 0.55, 1.02);
    CHECK(e.log_mean == doctest::Approx(-0.28768207245178093).epsilon(1e-12));
    CHECK(e.log_se == doctest::Approx(0.1575640248809832).epsilon(1e-12));
    CHECK(two_sided_p(e) == doctest::Approx(0.06787879068).epsilon(1e-9));
  }
  SUBCASE("OR 1.27 (0.99, 1.63)") {
    auto e = EffectEstimate::from_ci(EffectScale::OR, 1.27, 0.99, 1.63);
    CHECK(e.log_mean == doctest::Approx(0.23901690047049991).epsilon(1e-12));
    CHECK(e.log_se == doctest::Approx(0.12720395747200075).epsilon(1e-12));
    CHECK(two_sided_p(e) == doctest::Approx(0.06024378006).epsilon(1e-9));
  }
  SUBCASE("additive scale uses the identity transform") {
    auto e = EffectEstimate::from_ci(EffectScale::MeanDifference, 1.0, -2.0, 4.0);
    CHECK(e.log_mean == 1.0);
    CHECK(e.log_se == doctest::Approx(6.0 / (2.0 * z_two_sided(0.95))).epsilon(1e-14));
  }
}

TEST_CASE("critical value follows the stated interval level") {
  // The same bounds read as a 90% interval imply a wider likelihood: the SE
  // grows by z(.95)/z(.90), because the published width now spans fewer SEs.
  auto e95 = EffectEstimate::from_ci(EffectScale::RR, 0.76, 0.55, 1.04, 0.95);
  auto e90 = EffectEstimate::from_ci(EffectScale::RR, 0.76, 0.55, 1.04, 0.90);
  CHECK(e90.log_se / e95.log_se ==
        doctest::Approx(z_two_sided(0.95) / z_two_sided(0.90)).epsilon(1e-13));
  CHECK(e90.log_mean == e95.log_mean);
}

TEST_CASE("wald_ci inverts the recovery exactly") {
  SUBCASE("frozen values") {
    auto [lo, hi] = wald_ci(EffectScale::RR, -0.27443684570176029, 0.16251770923698897, 0.95);
    CHECK(lo == doctest::Approx(0.552685750189).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.04507850945).epsilon(1e-9));
    auto [alo, ahi] = wald_ci(EffectScale::OR, 0.23901690047049991, 0.12720395747200075, 0.95);
    CHECK(alo == doctest::Approx(0.989754570805).epsilon(1e-9));
    CHECK(ahi == doctest::Approx(1.62959590951).epsilon(1e-9));
  }
  SUBCASE("round trip over random likelihoods") {
    for (int i = 0; i < 2000; ++i) {
      double mean = 2.0 * (counter_uniform(31, 2 * i) - 0.5);
      double se = 0.02 + counter_uniform(31, 2 * i + 1);
      auto [lo, hi] = wald_ci(EffectScale::HR, mean, se, 0.95);
      // Point at the interval's implied centre: symmetric by construction,
      // so no off-centre warning and the likelihood comes back bit-close.
      auto e = EffectEstimate::from_ci(EffectScale::HR, std::exp(mean), lo, hi);
      CHECK(e.warnings.empty());
      CHECK(e.log_mean == doctest::Approx(mean).epsilon(1e-12));
      CHECK(e.log_se == doctest::Approx(se).epsilon(1e-12));
    }
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(wald_ci(EffectScale::HR, 0.0, 0.0, 0.95), ValidationError);
    CHECK_THROWS_AS(wald_ci(EffectScale::HR, 0.0, -1.0, 0.95), ValidationError);
    CHECK_THROWS_AS(wald_ci(EffectScale::HR, 0.0, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(wald_ci(EffectScale::HR, 0.0, 1.0, 0.0), ValidationError);
  }
}

TEST_CASE("input validation rejects malformed estimates") {
  auto nan = std::nan("");
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, nan, 0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, nan, 1.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, 0.5, nan), ValidationError);
  CHECK_THROWS_AS(
      EffectEstimate::from_ci(EffectScale::MeanDifference, 0.0, -1.0,
                              std::numeric_limits<double>::infinity()),
      ValidationError);
  // Level outside (0,1).
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, 0.5, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, 0.5, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, 0.5, 1.0, -0.95), ValidationError);
  // Non-positive values on a ratio scale.
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::RR, -0.7, 0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::RR, 0.7, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::OR, 0.7, -0.5, 1.0), ValidationError);
  // ...but fine on additive scales.
  CHECK_NOTHROW(EffectEstimate::from_ci(EffectScale::MeanDifference, -0.7, -1.5, 0.1));
  // Degenerate or inverted interval.
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, 1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.7, 0.7, 0.7), ValidationError);
  // Point outside its own interval.
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 0.4, 0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(EffectEstimate::from_ci(EffectScale::HR, 1.2, 0.5, 1.0), ValidationError);
}

TEST_CASE("off-centre point estimates warn but do not fail") {
  // Geometric centre of (0.55, 1.04) is ~0.756; a published point of 0.70 is
  // far enough off to trigger the consistency warning.
  auto e = EffectEstimate::from_ci(EffectScale::RR, 0.70, 0.55, 1.04);
  REQUIRE(e.warnings.size() == 1);
  CHECK(e.warnings[0].find("off-centre") != std::string::npos);
  CHECK(e.log_mean == doctest::Approx(std::log(0.70)).epsilon(1e-14));
}

TEST_CASE("p-value is invariant under direction mirroring") {
  for (int i = 0; i < 500; ++i) {
    double mean = 1.5 * (counter_uniform(77, 2 * i) - 0.5);
    double se = 0.05 + 0.5 * counter_uniform(77, 2 * i + 1);
    auto [lo, hi] = wald_ci(EffectScale::HR, mean, se, 0.95);
    auto e = EffectEstimate::from_ci(EffectScale::HR, std::exp(mean), lo, hi);
    auto m = EffectEstimate::from_ci(EffectScale::HR, std::exp(-mean), 1.0 / hi, 1.0 / lo);
    CHECK(two_sided_p(e) == doctest::Approx(two_sided_p(m)).epsilon(1e-12));
  }
}

TEST_CASE("scale names parse both ways") {
  CHECK(parse_scale("HR") == EffectScale::HR);
  CHECK(parse_scale("hr") == EffectScale::HR);
  CHECK(parse_scale("RR") == EffectScale::RR);
  CHECK(parse_scale("OR") == EffectScale::OR);
  CHECK(parse_scale("MD") == EffectScale::MeanDifference);
  CHECK(parse_scale("ard") == EffectScale::RiskDifference);
  CHECK(!parse_scale("hazard").has_value());
  CHECK(scale_name(EffectScale::RiskDifference) == std::string("ARD"));
  CHECK(null_value(EffectScale::OR) == 1.0);
  CHECK(null_value(EffectScale::MeanDifference) == 0.0);
}

#include <doctest.h>

#include <cmath>

#include "rctv/bayes_rules.hpp"
#include "rctv/posterior.hpp"
#include "rctv/prior.hpp"
#include "rctv/rng.hpp"
#include "rctv/sensitivity.hpp"
#include "oracle.hpp"

using namespace rctv;

namespace {

ThresholdSet t_default() {
  return ThresholdSet::make(EffectScale::RR, BenefitDirection::LowerIsBenefit, 0.8);
}

std::vector<PosteriorSummary> reanalyze(EffectScale scale, const EffectEstimate& e,
                                        const ThresholdSet& t,
                                        std::optional<double> cer = std::nullopt) {
  std::vector<PosteriorSummary> grid;
  for (const auto& prior : build_prior_grid(scale, t)) {
    auto post = conjugate_posterior(prior, derive_likelihood(e));
    grid.push_back(posterior_metrics(prior, post, scale, t, cer));
  }
  return grid;
}

}  // namespace

TEST_CASE("prior grid construction") {
  auto t = t_default();
  SUBCASE("stock grid with default dispersion") {
    auto grid = build_prior_grid(EffectScale::RR, t);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0].label == PriorLabel::Skeptical);
    CHECK(grid[0].mean == 0.0);
    CHECK(grid[0].sd == 0.355);
    CHECK(grid[1].label == PriorLabel::Optimistic);
    CHECK(grid[1].mean == doctest::Approx(std::log(0.8)).epsilon(1e-14));
    // The 15%-opposing-mass floor (sd 0.2153) is below the default belief sd,
    // so the belief sd stands.
    CHECK(grid[1].sd == 0.355);
    CHECK(grid[2].label == PriorLabel::Pessimistic);
    CHECK(grid[2].mean == doctest::Approx(-std::log(0.8)).epsilon(1e-12));
    CHECK(grid[2].sd == 0.355);
  }
  SUBCASE("tail-mass floor binds when the belief sd is small") {
    CHECK(constraint_sd(std::log(0.8), 0.15) ==
          doctest::Approx(0.21529946215182877).epsilon(1e-13));
    PriorGridOptions opt;
    opt.belief_sd = 0.10;
    auto grid = build_prior_grid(EffectScale::RR, t, std::nullopt, opt);
    CHECK(grid[0].sd == 0.10);
    CHECK(grid[1].sd == doctest::Approx(0.21529946215182877).epsilon(1e-13));
    // With the floor binding, the opposing tail holds exactly 15% of the mass.
    double tail = 1.0 - norm_cdf(-grid[1].mean / grid[1].sd);
    CHECK(tail == doctest::Approx(0.15).epsilon(1e-12));
  }
  SUBCASE("external evidence adds a data-derived prior") {
    auto grid = build_prior_grid(EffectScale::RR, t, Likelihood{-0.15, 0.08});
    REQUIRE(grid.size() == 4);
    CHECK(grid[3].label == PriorLabel::DataDerived);
    CHECK(grid[3].mean == -0.15);
    CHECK(grid[3].sd == 0.08);
    CHECK_THROWS_AS(build_prior_grid(EffectScale::RR, t, Likelihood{-0.15, 0.0}),
                    ValidationError);
  }
  SUBCASE("option validation") {
    PriorGridOptions opt;
    opt.belief_sd = 0.0;
    CHECK_THROWS_AS(build_prior_grid(EffectScale::RR, t, std::nullopt, opt), ValidationError);
    CHECK_THROWS_AS(constraint_sd(0.2, 0.0), ValidationError);
    CHECK_THROWS_AS(constraint_sd(0.2, 0.5), ValidationError);
  }
  SUBCASE("prior label keys") {
    CHECK(prior_key(PriorLabel::DataDerived) == std::string("data_derived"));
    CHECK(parse_prior_label("data-derived") == PriorLabel::DataDerived);
    CHECK(parse_prior_label("skeptical") == PriorLabel::Skeptical);
    CHECK(!parse_prior_label("hopeful").has_value());
  }
}

TEST_CASE("conjugate posterior updating") {
  SUBCASE("frozen skeptical posteriors for three trials") {
    PriorSpec skep{PriorLabel::Skeptical, 0.0, 0.355};
    auto p1 = conjugate_posterior(skep, {-0.27443684570176029, 0.16251770923698897});
    CHECK(p1.mean == doctest::Approx(-0.22688653122322203).epsilon(1e-12));
    CHECK(p1.sd == doctest::Approx(0.14776917216169642).epsilon(1e-12));
    auto p2 = conjugate_posterior(skep, {-0.28768207245178093, 0.1575640248809832});
    CHECK(p2.mean == doctest::Approx(-0.2403367016053066).epsilon(1e-12));
    CHECK(p2.sd == doctest::Approx(0.14401599027210091).epsilon(1e-12));
    auto p3 = conjugate_posterior(skep, {0.23901690047049991, 0.12720395747200075});
    CHECK(p3.mean == doctest::Approx(0.21182043889441507).epsilon(1e-12));
    CHECK(p3.sd == doctest::Approx(0.11974854620770502).epsilon(1e-12));
  }
  SUBCASE("flat prior returns the likelihood") {
    auto p = conjugate_posterior({PriorLabel::Skeptical, 0.0, 1e6},
                                 {-0.27443684570176029, 0.16251770923698897});
    CHECK(p.mean == doctest::Approx(-0.27443684570176029).epsilon(1e-10));
    CHECK(p.sd == doctest::Approx(0.16251770923698897).epsilon(1e-10));
  }
  SUBCASE("dogmatic prior ignores the data") {
    auto p = conjugate_posterior({PriorLabel::Skeptical, 0.1, 1e-6},
                                 {-0.27443684570176029, 0.16251770923698897});
    CHECK(p.mean == doctest::Approx(0.1).epsilon(1e-8));
    CHECK(p.sd == doctest::Approx(1e-6).epsilon(1e-6));
  }
  SUBCASE("precisions add") {
    for (int i = 0; i < 1000; ++i) {
      double psd = 0.05 + counter_uniform(550, 3 * i);
      double lse = 0.05 + counter_uniform(550, 3 * i + 1);
      double lm = 2.0 * (counter_uniform(550, 3 * i + 2) - 0.5);
      auto p = conjugate_posterior({PriorLabel::Skeptical, 0.0, psd}, {lm, lse});
      CHECK(1.0 / (p.sd * p.sd) ==
            doctest::Approx(1.0 / (psd * psd) + 1.0 / (lse * lse)).epsilon(1e-12));
      // Posterior mean sits between prior mean and likelihood mean.
      CHECK(p.mean * lm >= 0.0);
      CHECK(std::abs(p.mean) <= std::abs(lm) + 1e-15);
    }
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(conjugate_posterior({PriorLabel::Skeptical, 0.0, 0.0}, {0.0, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS(conjugate_posterior({PriorLabel::Skeptical, 0.0, 1.0}, {0.0, 0.0}),
                    ValidationError);
  }
}

TEST_CASE("posterior metrics agree with numerical integration") {
  auto check_metrics = [](EffectScale scale, const ThresholdSet& t, double mean, double sd) {
    auto sum = posterior_metrics({PriorLabel::Skeptical, 0.0, 0.355}, {mean, sd}, scale, t);
    auto c = canonical_thresholds(scale, t);
    // Integrate the analysis-scale density over each clinical region. The
    // canonical frame maps benefit to sign*x < 0.
    double lo_b, hi_b;  // analysis-scale benefit region
    if (c.sign > 0) { lo_b = -40.0; hi_b = 0.0; } else { lo_b = 0.0; hi_b = 40.0; }
    CHECK(sum.pr_any_benefit ==
          doctest::Approx(testoracle::normal_prob(lo_b, hi_b, mean, sd)).epsilon(1e-10));
    double b_edge = c.sign * c.b;  // back to the analysis scale
    double h_edge = c.sign * c.h;
    double r0 = c.sign > 0 ? c.r_lo : -c.r_up;
    double r1 = c.sign > 0 ? c.r_up : -c.r_lo;
    double mcid_b = c.sign > 0
        ? testoracle::normal_prob(-40.0, b_edge, mean, sd)
        : testoracle::normal_prob(b_edge, 40.0, mean, sd);
    CHECK(sum.pr_mcid_benefit == doctest::Approx(mcid_b).epsilon(1e-10));
    CHECK(sum.pr_rope ==
          doctest::Approx(testoracle::normal_prob(r0, r1, mean, sd)).epsilon(1e-10));
    double severe = c.sign > 0
        ? testoracle::normal_prob(h_edge, 40.0, mean, sd)
        : testoracle::normal_prob(-40.0, h_edge, mean, sd);
    CHECK(sum.pr_severe_harm == doctest::Approx(severe).epsilon(1e-10));
    CHECK(sum.pr_any_harm == 1.0 - sum.pr_any_benefit);
  };

  auto t = t_default();
  check_metrics(EffectScale::RR, t, -0.22688653122322203, 0.14776917216169642);
  check_metrics(EffectScale::RR, t, 0.21182043889441507, 0.11974854620770502);
  auto t_hi = ThresholdSet::make(EffectScale::HR, BenefitDirection::HigherIsBenefit, 1.25);
  check_metrics(EffectScale::HR, t_hi, 0.18, 0.22);
  auto t_md = ThresholdSet::make(EffectScale::MeanDifference, BenefitDirection::LowerIsBenefit,
                                 -5.0, 5.0, RopeInterval{-1.0, 1.0});
  check_metrics(EffectScale::MeanDifference, t_md, -2.5, 3.0);
}

TEST_CASE("posterior summary bundle invariants hold over random draws") {
  auto t = t_default();
  for (int i = 0; i < 2000; ++i) {
    double mean = 2.0 * (counter_uniform(660, 2 * i) - 0.5);
    double sd = 0.02 + 0.6 * counter_uniform(660, 2 * i + 1);
    auto s = posterior_metrics({PriorLabel::Skeptical, 0.0, 0.355}, {mean, sd},
                               EffectScale::RR, t);
    for (double p : {s.pr_any_benefit, s.pr_mcid_benefit, s.pr_rope, s.pr_any_harm,
                     s.pr_severe_harm}) {
      REQUIRE(p >= 0.0);
      REQUIRE(p <= 1.0);
    }
    REQUIRE(s.pr_any_benefit + s.pr_any_harm == 1.0);  // exact complement
    REQUIRE(s.pr_mcid_benefit <= s.pr_any_benefit + 1e-15);
    REQUIRE(s.pr_severe_harm <= s.pr_any_harm + 1e-15);
    // MCID-benefit, ROPE, and severe-harm regions are disjoint.
    REQUIRE(s.pr_mcid_benefit + s.pr_rope + s.pr_severe_harm <= 1.0 + 1e-12);
    REQUIRE(s.cri95[0] < s.cri95[1]);
    REQUIRE(s.median == from_analysis(EffectScale::RR, mean));
    REQUIRE(s.median >= s.cri95[0]);
    REQUIRE(s.median <= s.cri95[1]);
  }
}

TEST_CASE("posterior metrics argument validation") {
  auto t = t_default();
  PriorSpec skep{PriorLabel::Skeptical, 0.0, 0.355};
  CHECK_THROWS_AS(posterior_metrics(skep, {0.0, 0.0}, EffectScale::RR, t), ValidationError);
  CHECK_THROWS_AS(posterior_metrics(skep, {0.0, 0.1}, EffectScale::RR, t, 0.0),
                  ValidationError);
  CHECK_THROWS_AS(posterior_metrics(skep, {0.0, 0.1}, EffectScale::RR, t, 1.0),
                  ValidationError);
}

TEST_CASE("absolute risk reduction from a control event rate") {
  auto t = t_default();
  PriorSpec skep{PriorLabel::Skeptical, 0.0, 0.355};
  SUBCASE("risk ratio converts cleanly") {
    auto s = posterior_metrics(skep, {std::log(0.76), 0.15}, EffectScale::RR, t, 0.46);
    REQUIRE(s.arr.has_value());
    CHECK(*s.arr == doctest::Approx(0.46 * (1.0 - 0.76)).epsilon(1e-12));
    CHECK(s.warnings.empty());
  }
  SUBCASE("odds ratio converts with a caveat") {
    auto t_or = ThresholdSet::make(EffectScale::OR, BenefitDirection::LowerIsBenefit, 0.8);
    auto s = posterior_metrics(skep, {std::log(0.76), 0.15}, EffectScale::OR, t_or, 0.46);
    REQUIRE(s.arr.has_value());
    REQUIRE(s.warnings.size() == 1);
    CHECK(s.warnings[0].find("rare") != std::string::npos);
  }
  SUBCASE("additive scales have no conversion") {
    auto t_md = ThresholdSet::make(EffectScale::MeanDifference,
                                   BenefitDirection::LowerIsBenefit, -5.0, 5.0,
                                   RopeInterval{-1.0, 1.0});
    auto s = posterior_metrics(skep, {-2.0, 1.0}, EffectScale::MeanDifference, t_md, 0.46);
    CHECK(!s.arr.has_value());
    REQUIRE(s.warnings.size() == 1);
    CHECK(s.warnings[0].find("ratio measures only") != std::string::npos);
  }
}

TEST_CASE("worked reanalysis: OR 1.27 (0.99, 1.63)") {
  auto t = ThresholdSet::make(EffectScale::OR, BenefitDirection::LowerIsBenefit, 0.8);
  auto e = EffectEstimate::from_ci(EffectScale::OR, 1.27, 0.99, 1.63);
  auto grid = reanalyze(EffectScale::OR, e, t);
  REQUIRE(grid.size() == 3);

  // All three priors share sd 0.355, so all three posteriors share one sd.
  for (const auto& s : grid)
    CHECK(s.sd == doctest::Approx(0.11974854620770502).epsilon(1e-12));
  CHECK(grid[0].mean == doctest::Approx(0.21182043889441507).epsilon(1e-12));
  CHECK(grid[1].mean == doctest::Approx(0.186430121275).epsilon(1e-10));
  CHECK(grid[2].mean == doctest::Approx(0.237210756513).epsilon(1e-10));

  CHECK(grid[0].pr_severe_harm == doctest::Approx(0.4623331899).epsilon(1e-8));
  CHECK(grid[1].pr_any_harm == doctest::Approx(0.9402465491).epsilon(1e-8));
  CHECK(grid[1].pr_severe_harm == doctest::Approx(0.3795786127).epsilon(1e-8));
  CHECK(grid[2].pr_any_harm == doctest::Approx(0.9761991588).epsilon(1e-8));

  // Harm survives every prior, severe harm is credible on the reference
  // posterior: the fingerprint reads Harmful.
  auto v = classify_bayesian(grid);
  CHECK(v.cls == VerdictClass::Harmful);
  CHECK(v.track == AnalysisTrack::Bayesian);

  // Priors barely move this posterior: the grid pools with Q ~ 0.09 and
  // I^2 clamps to zero.
  auto sens = prior_sensitivity(grid);
  CHECK(sens.q > 0.088);
  CHECK(sens.q < 0.092);
  CHECK(sens.i2 == 0.0);
  CHECK(sens.robust);
}

TEST_CASE("worked reanalysis: HR 0.75 (0.55, 1.02)") {
  auto t = ThresholdSet::make(EffectScale::HR, BenefitDirection::LowerIsBenefit, 0.8);
  auto e = EffectEstimate::from_ci(EffectScale::HR, 0.75, 0.55, 1.02);
  auto grid = reanalyze(EffectScale::HR, e, t);

  CHECK(grid[0].pr_any_benefit == doctest::Approx(0.9524).epsilon(2e-4));
  CHECK(grid[1].pr_any_benefit == doctest::Approx(0.9728).epsilon(2e-4));
  CHECK(grid[2].pr_any_benefit == doctest::Approx(0.9213).epsilon(2e-4));
  CHECK(grid[0].pr_mcid_benefit == doctest::Approx(0.5475).epsilon(2e-4));

  // Benefit near-certain, size straddling the MCID: Imprecise (+).
  CHECK(classify_bayesian(grid).cls == VerdictClass::ImprecisePlus);
  CHECK(prior_sensitivity(grid).robust);
}

TEST_CASE("worked reanalysis: RR 0.76 (0.55, 1.04)") {
  auto t = t_default();
  auto e = EffectEstimate::from_ci(EffectScale::RR, 0.76, 0.55, 1.04);
  auto grid = reanalyze(EffectScale::RR, e, t, 0.46);

  CHECK(grid[0].pr_any_benefit == doctest::Approx(0.9377).epsilon(2e-4));
  CHECK(grid[1].pr_any_benefit == doctest::Approx(0.9638).epsilon(2e-4));
  CHECK(grid[2].pr_any_benefit == doctest::Approx(0.8986).epsilon(2e-4));

  // Benefit probable under every prior yet short of any decisive pattern.
  CHECK(classify_bayesian(grid).cls == VerdictClass::Inconclusive);

  // ARR against a 46% control event rate, reference posterior.
  REQUIRE(grid[0].arr.has_value());
  double med = std::exp(-0.22688653122322203);
  CHECK(*grid[0].arr == doctest::Approx(0.46 * (1.0 - med)).epsilon(1e-10));
}

TEST_CASE("prototype fingerprints map back to their classes") {
  // Clean five-probability prototypes, one per class; each is installed as
  // the whole grid (three identical entries) and must classify as itself.
  struct Proto {
    VerdictClass cls;
    double benefit, mcid, rope, harm, severe;
  };
  const Proto protos[] = {
      {VerdictClass::Positive, 0.995, 0.95, 0.005, 0.005, 0.001},
      {VerdictClass::ImprecisePlus, 0.97, 0.60, 0.08, 0.03, 0.005},
      {VerdictClass::Neutral, 0.62, 0.005, 0.92, 0.05, 0.01},
      {VerdictClass::Inconclusive, 0.74, 0.38, 0.35, 0.18, 0.10},
      {VerdictClass::Negative, 0.72, 0.03, 0.88, 0.20, 0.05},
      {VerdictClass::Harmful, 0.005, 0.005, 0.04, 0.97, 0.50},
  };
  const PriorLabel labels[] = {PriorLabel::Skeptical, PriorLabel::Optimistic,
                               PriorLabel::Pessimistic};
  for (const auto& p : protos) {
    std::vector<PosteriorSummary> grid;
    for (auto label : labels) {
      PosteriorSummary s;
      s.prior = {label, 0.0, 0.355};
      s.pr_any_benefit = p.benefit;
      s.pr_mcid_benefit = p.mcid;
      s.pr_rope = p.rope;
      s.pr_any_harm = p.harm;
      s.pr_severe_harm = p.severe;
      grid.push_back(s);
    }
    auto v = classify_bayesian(grid);
    INFO("prototype ", verdict_key(p.cls));
    CHECK(v.cls == p.cls);
    CHECK(!v.rationale.empty());
  }
}

TEST_CASE("bayesian classifier details") {
  SUBCASE("empty grid throws") {
    CHECK_THROWS_AS(classify_bayesian({}), ValidationError);
  }
  SUBCASE("reference posterior prefers the skeptical entry") {
    PosteriorSummary a, b;
    a.prior = {PriorLabel::Optimistic, -0.2, 0.3};
    b.prior = {PriorLabel::Skeptical, 0.0, 0.3};
    std::vector<PosteriorSummary> grid{a, b};
    CHECK(reference_posterior(grid).prior.label == PriorLabel::Skeptical);
    std::vector<PosteriorSummary> no_skep{a};
    CHECK(reference_posterior(no_skep).prior.label == PriorLabel::Optimistic);
  }
  SUBCASE("harm must survive every prior") {
    // Reference says Harmful, but one optimistic prior keeps Pr(any harm)
    // at 0.85: the Harmful rule may not fire.
    PosteriorSummary ref;
    ref.prior = {PriorLabel::Skeptical, 0.0, 0.355};
    ref.pr_any_benefit = 0.03;
    ref.pr_any_harm = 0.97;
    ref.pr_severe_harm = 0.50;
    ref.pr_rope = 0.04;
    ref.pr_mcid_benefit = 0.005;
    PosteriorSummary opt = ref;
    opt.prior.label = PriorLabel::Optimistic;
    opt.pr_any_harm = 0.85;
    auto v = classify_bayesian({ref, opt});
    CHECK(v.cls != VerdictClass::Harmful);
  }
}

TEST_CASE("prior sensitivity") {
  SUBCASE("antisymmetric disagreement is flagged") {
    auto r = prior_sensitivity(std::vector<NormalPosterior>{{-0.5, 0.1}, {0.5, 0.1}});
    CHECK(r.q == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(r.i2 == doctest::Approx(0.98).epsilon(1e-12));
    CHECK(!r.robust);
  }
  SUBCASE("identical posteriors pool perfectly") {
    auto r = prior_sensitivity(std::vector<NormalPosterior>{{0.2, 0.1}, {0.2, 0.1}, {0.2, 0.1}});
    CHECK(r.q < 1e-15);  // zero up to accumulation rounding
    CHECK(r.i2 == 0.0);
    CHECK(r.robust);
  }
  SUBCASE("fewer than two posteriors is an error") {
    CHECK_THROWS_AS(prior_sensitivity(std::vector<NormalPosterior>{{0.2, 0.1}}),
                    ValidationError);
    CHECK_THROWS_AS(prior_sensitivity(std::vector<NormalPosterior>{}), ValidationError);
    CHECK_THROWS_AS(prior_sensitivity(std::vector<NormalPosterior>{{0.0, 0.1}, {0.0, 0.0}}),
                    ValidationError);
  }
}

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rctv/classify.hpp"
#include "rctv/error.hpp"
#include "rctv/posterior.hpp"
#include "rctv/verdict.hpp"

// Posterior-fingerprint classification: map the per-prior summary bundle to
// the shared six-class vocabulary. One reference posterior (the skeptical
// prior's) carries most rules; the Harmful rule additionally demands that the
// harm signal survive every prior in the grid, the optimistic one included.

namespace rctv {

// Probability cutoffs, exposed so a config file can tighten or relax them.
// Defaults are calibrated so that clean prototype posteriors of each class
// map back to that class and the worked reanalyses land where published
// trials did.
struct BayesRuleTable {
  // Harmful: severe harm credible on the reference posterior AND harm all
  // but certain under every prior.
  double harmful_severe_min = 0.40;
  double harmful_any_harm_min = 0.90;
  // Positive: MCID-sized benefit highly probable, equivalence and harm ruled out.
  double positive_mcid_min = 0.80;
  double positive_rope_max = 0.05;
  double positive_harm_max = 0.05;
  // Neutral: mass concentrated in the ROPE, MCID benefit negligible.
  double neutral_rope_min = 0.90;
  double neutral_mcid_max = 0.02;
  // Negative: ROPE-dominated with both meaningful effects improbable.
  double negative_rope_min = 0.80;
  double negative_mcid_max = 0.05;
  double negative_severe_max = 0.20;
  // Imprecise(+): benefit near-certain but its size genuinely uncertain.
  double imprecise_benefit_min = 0.95;
  double imprecise_mcid_lo = 0.40;
  double imprecise_mcid_hi = 0.70;
};

// The reference posterior is the skeptical-prior entry; if a caller removed
// it from the grid, the first entry stands in.
inline const PosteriorSummary& reference_posterior(const std::vector<PosteriorSummary>& grid) {
  for (const auto& s : grid)
    if (s.prior.label == PriorLabel::Skeptical) return s;
  return grid.front();
}

inline Verdict classify_bayesian(const std::vector<PosteriorSummary>& grid,
                                 const BayesRuleTable& rules = {}) {
  if (grid.empty()) throw ValidationError("classify_bayesian: empty posterior grid");
  const PosteriorSummary& ref = reference_posterior(grid);
  double min_any_harm = grid.front().pr_any_harm;
  for (const auto& s : grid) min_any_harm = std::min(min_any_harm, s.pr_any_harm);

  Verdict v;
  v.track = AnalysisTrack::Bayesian;
  using detail::fmt3;

  if (ref.pr_severe_harm > rules.harmful_severe_min &&
      min_any_harm > rules.harmful_any_harm_min) {
    v.cls = VerdictClass::Harmful;
    v.rationale.push_back("Pr(severe harm) = " + fmt3(ref.pr_severe_harm) +
                          " on the reference posterior exceeds " +
                          fmt3(rules.harmful_severe_min));
    v.rationale.push_back("Pr(any harm) exceeds " + fmt3(rules.harmful_any_harm_min) +
                          " under every prior (minimum " + fmt3(min_any_harm) + ")");
  } else if (ref.pr_mcid_benefit > rules.positive_mcid_min &&
             ref.pr_rope < rules.positive_rope_max &&
             ref.pr_any_harm < rules.positive_harm_max) {
    v.cls = VerdictClass::Positive;
    v.rationale.push_back("Pr(MCID benefit) = " + fmt3(ref.pr_mcid_benefit) +
                          " with equivalence and harm both improbable");
  } else if (ref.pr_rope > rules.neutral_rope_min &&
             ref.pr_mcid_benefit < rules.neutral_mcid_max) {
    v.cls = VerdictClass::Neutral;
    v.rationale.push_back("Pr(ROPE) = " + fmt3(ref.pr_rope) +
                          " dominates; meaningful benefit improbable");
  } else if (ref.pr_rope > rules.negative_rope_min &&
             ref.pr_mcid_benefit < rules.negative_mcid_max &&
             ref.pr_severe_harm < rules.negative_severe_max) {
    v.cls = VerdictClass::Negative;
    v.rationale.push_back("Pr(ROPE) = " + fmt3(ref.pr_rope) +
                          " with both meaningful benefit and severe harm improbable");
  } else if (ref.pr_any_benefit > rules.imprecise_benefit_min &&
             ref.pr_mcid_benefit >= rules.imprecise_mcid_lo &&
             ref.pr_mcid_benefit <= rules.imprecise_mcid_hi) {
    v.cls = VerdictClass::ImprecisePlus;
    v.rationale.push_back("Pr(any benefit) = " + fmt3(ref.pr_any_benefit) +
                          " but Pr(MCID benefit) = " + fmt3(ref.pr_mcid_benefit) +
                          " leaves the size uncertain");
  } else {
    v.cls = VerdictClass::Inconclusive;
    v.rationale.push_back("posterior fingerprint matches no decisive pattern "
                          "(Pr(any benefit) = " + fmt3(ref.pr_any_benefit) +
                          ", Pr(MCID benefit) = " + fmt3(ref.pr_mcid_benefit) +
                          ", Pr(ROPE) = " + fmt3(ref.pr_rope) +
                          ", Pr(any harm) = " + fmt3(ref.pr_any_harm) + ")");
  }
  return v;
}

}  // namespace rctv

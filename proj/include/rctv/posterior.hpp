#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rctv/effect.hpp"
#include "rctv/error.hpp"
#include "rctv/normal.hpp"
#include "rctv/prior.hpp"
#include "rctv/thresholds.hpp"

// Conjugate normal updating and the posterior summary bundle reported per
// prior. All updating happens on the analysis scale; summaries convert back
// to the original scale for display.

namespace rctv {

struct NormalPosterior {
  double mean = 0.0;  // analysis scale
  double sd = 0.0;
};

// Normal prior x normal likelihood -> normal posterior, precision-weighted.
inline NormalPosterior conjugate_posterior(const PriorSpec& prior, const Likelihood& lk) {
  if (!(prior.sd > 0.0)) throw ValidationError("conjugate_posterior: prior sd must be positive");
  if (!(lk.se > 0.0)) throw ValidationError("conjugate_posterior: likelihood se must be positive");
  double w0 = 1.0 / (prior.sd * prior.sd);
  double w1 = 1.0 / (lk.se * lk.se);
  NormalPosterior post;
  post.mean = (w0 * prior.mean + w1 * lk.mean) / (w0 + w1);
  post.sd = std::sqrt(1.0 / (w0 + w1));
  return post;
}

struct PosteriorSummary {
  PriorSpec prior;
  double mean = 0.0;  // analysis scale
  double sd = 0.0;
  double median = 0.0;                  // original scale
  std::array<double, 2> cri95{0.0, 0.0};  // original scale, ascending
  // Tail probabilities of clinical regions. Directions follow the threshold
  // set, not the raw sign: "benefit" is whichever side the measure calls
  // benefit. pr_any_benefit + pr_any_harm == 1 exactly by construction.
  double pr_any_benefit = 0.0;
  double pr_mcid_benefit = 0.0;
  double pr_rope = 0.0;
  double pr_any_harm = 0.0;
  double pr_severe_harm = 0.0;
  // Absolute risk reduction implied by a control event rate, when one is
  // supplied: cer * (1 - median). Ratio scales only.
  std::optional<double> arr;
  std::vector<std::string> warnings;
};

inline PosteriorSummary posterior_metrics(const PriorSpec& prior, const NormalPosterior& post,
                                          EffectScale scale, const ThresholdSet& t,
                                          std::optional<double> cer = std::nullopt) {
  t.validate(scale);
  if (!(post.sd > 0.0)) throw ValidationError("posterior_metrics: posterior sd must be positive");
  CanonicalThresholds c = canonical_thresholds(scale, t);
  double m = c.sign * post.mean;  // canonical frame: benefit negative
  double s = post.sd;

  PosteriorSummary out;
  out.prior = prior;
  out.mean = post.mean;
  out.sd = post.sd;
  out.median = from_analysis(scale, post.mean);
  double z = z_two_sided(0.95);
  double a = from_analysis(scale, post.mean - z * s);
  double b = from_analysis(scale, post.mean + z * s);
  out.cri95 = {std::min(a, b), std::max(a, b)};

  out.pr_any_benefit = norm_cdf((0.0 - m) / s);
  out.pr_mcid_benefit = norm_cdf((c.b - m) / s);
  out.pr_rope = norm_cdf((c.r_up - m) / s) - norm_cdf((c.r_lo - m) / s);
  out.pr_any_harm = 1.0 - out.pr_any_benefit;  // exact complement
  out.pr_severe_harm = norm_cdf((m - c.h) / s);

  if (cer) {
    if (!(*cer > 0.0 && *cer < 1.0))
      throw ValidationError("posterior_metrics: control event rate must be in (0,1)");
    if (!is_ratio_scale(scale)) {
      out.warnings.push_back("control event rate ignored: ARR conversion is defined "
                             "for ratio measures only");
    } else {
      out.arr = *cer * (1.0 - out.median);
      if (scale == EffectScale::OR)
        out.warnings.push_back("ARR treats the posterior median OR as a risk ratio; "
                               "approximate unless the outcome is rare");
    }
  }
  return out;
}

}  // namespace rctv

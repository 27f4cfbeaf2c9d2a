#pragma once

#include <cstdint>

#include "rctv/error.hpp"

// Design diagnostics conditional on statistical significance: power, Type S
// (probability a significant estimate has the wrong sign) and exaggeration
// (expected |estimate| / |true effect| among significant results), plus a
// two-stage winner's-curse chain for exploratory-to-confirmatory planning.

namespace rctv {

// Exact values from truncated-normal expectations; used to cross-check the
// Monte Carlo estimates and reported alongside them.
struct RetrodesignClosedForm {
  double power = 0.0;
  double type_s = 0.0;
  double exaggeration = 0.0;
};

RetrodesignClosedForm retrodesign_closed_form(double effect, double se, double alpha);

struct RetrodesignResult {
  // Monte Carlo estimates.
  double power = 0.0;
  double type_s = 0.0;
  double exaggeration = 0.0;
  // Monte Carlo standard errors for each estimate above.
  double power_se = 0.0;
  double type_s_se = 0.0;
  double exaggeration_se = 0.0;
  RetrodesignClosedForm closed{};
  std::uint64_t n_sims = 0;
  std::uint64_t n_significant = 0;
  std::uint64_t seed = 0;
};

// Simulate estimates ~ N(effect, se^2), keep the significant ones, summarise.
// Counter-based draws accumulated in fixed-size chunks merged in index order:
// the result depends on (effect, se, alpha, n_sims, seed) only, never on
// `threads` (0 = hardware concurrency).
RetrodesignResult retrodesign(double effect, double se, double alpha,
                              std::uint64_t n_sims, std::uint64_t seed,
                              unsigned threads = 0);

// Two-stage chain: an exploratory trial with known true effect is run; when
// (and only when) it reaches significance, its published estimate sizes a
// confirmatory trial for `target_power`. Because significant estimates are
// inflated, the confirmatory trial is systematically undersized; this report
// quantifies by how much.
struct CurseChainReport {
  double true_effect = 0.0;
  double exploratory_se = 0.0;
  double alpha = 0.0;
  double target_power = 0.0;
  std::uint64_t n_sims = 0;
  std::uint64_t n_significant = 0;
  std::uint64_t seed = 0;
  double exploratory_power = 0.0;    // fraction of exploratory runs significant
  double mean_inflation = 0.0;       // |estimate| / |true| among significant runs
  double median_inflation = 0.0;
  double mean_true_power = 0.0;      // power the confirmatory trial actually has
  double median_true_power = 0.0;
  double p10_true_power = 0.0;
  double p90_true_power = 0.0;
  double median_power_shortfall = 0.0;   // target_power - median_true_power
  double median_n_underestimate = 0.0;   // factor n was undersized by, median
  double fraction_reaching_target = 0.0; // confirmatory runs meeting target power
};

CurseChainReport winners_curse_chain(double true_effect, double exploratory_se,
                                     double alpha, double target_power,
                                     std::uint64_t n_sims, std::uint64_t seed);

}  // namespace rctv

#pragma once

#include <cmath>

#include "rctv/error.hpp"
#include "rctv/normal.hpp"

// Power arithmetic for the normal model: prospective power, the "observed
// power" transform (kept only to demonstrate its circularity), and sample
// size scaling for CI width.

namespace rctv {

// Probability that a two-sided level-alpha z-test rejects when the true
// effect is `effect` and the estimate's standard error is `se`. Both tails
// count as rejection.
inline double power_two_sided(double effect, double se, double alpha) {
  if (!(se > 0.0)) throw ValidationError("power_two_sided: se must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("power_two_sided: alpha must be in (0,1)");
  double lambda = std::abs(effect) / se;
  double zc = norm_quantile(1.0 - 0.5 * alpha);
  return norm_cdf(lambda - zc) + norm_cdf(-lambda - zc);
}

struct ObservedPower {
  double value = 0.0;      // two-sided "observed power" at the observed z
  double one_sided = 0.0;  // the dominant tail alone; exactly 0.5 when p == alpha
  double correction = 0.0; // value - one_sided: the minor tail's contribution
  // Always set: observed power is a deterministic transform of the p-value
  // and cannot support claims the p-value itself does not.
  const char* warning =
      "observed power is a one-to-one function of the p-value; "
      "it adds no information beyond the interval already reported";
};

// Post-hoc ("observed") power: prospective power evaluated at the observed
// z statistic, lambda = z_obs = Phi^-1(1 - p/2).
inline ObservedPower observed_power(double p, double alpha) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("observed_power: p must be in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("observed_power: alpha must be in (0,1)");
  double z_obs = norm_quantile(1.0 - 0.5 * p);
  double zc = norm_quantile(1.0 - 0.5 * alpha);
  ObservedPower r;
  r.one_sided = norm_cdf(z_obs - zc);
  r.value = r.one_sided + norm_cdf(-z_obs - zc);
  r.correction = r.value - r.one_sided;
  return r;
}

// Sample size scales with the inverse square of the CI width: to shrink a
// width by factor w relative to the original, multiply n by 1/w^2.
inline double n_ratio_for_width(double width_ratio) {
  if (!(width_ratio > 0.0))
    throw ValidationError("n_ratio_for_width: width ratio must be positive");
  return 1.0 / (width_ratio * width_ratio);
}

// Standardised effect (|effect|/se) needed for a target two-sided power.
// Monotone in lambda, solved by bisection to ~1e-13.
inline double noncentrality_for_power(double target_power, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("noncentrality_for_power: alpha must be in (0,1)");
  if (!(target_power > alpha && target_power < 1.0))
    throw ValidationError("noncentrality_for_power: target power must be in (alpha, 1)");
  double zc = norm_quantile(1.0 - 0.5 * alpha);
  auto pw = [&](double lam) { return norm_cdf(lam - zc) + norm_cdf(-lam - zc); };
  double lo = 0.0, hi = 1.0;
  while (pw(hi) < target_power) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    (pw(mid) < target_power ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rctv

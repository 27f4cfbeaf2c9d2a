#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rctv/error.hpp"
#include "rctv/normal.hpp"

// Published effect estimates and the normal likelihood recovered from them.
// Ratio measures (HR/RR/OR) are analysed on the log scale, additive measures
// (mean difference, absolute risk difference) on the identity scale; the
// shared term for both is the "analysis scale".

namespace rctv {

enum class EffectScale : std::uint8_t { HR, RR, OR, MeanDifference, RiskDifference };

constexpr bool is_ratio_scale(EffectScale s) {
  return s == EffectScale::HR || s == EffectScale::RR || s == EffectScale::OR;
}

// The no-effect value on the original scale: 1 for ratios, 0 otherwise.
constexpr double null_value(EffectScale s) { return is_ratio_scale(s) ? 1.0 : 0.0; }

const char* scale_name(EffectScale s);
std::optional<EffectScale> parse_scale(std::string_view name);

inline double to_analysis(EffectScale s, double x) {
  return is_ratio_scale(s) ? std::log(x) : x;
}
inline double from_analysis(EffectScale s, double x) {
  return is_ratio_scale(s) ? std::exp(x) : x;
}

// Normal approximation to the evidence in one trial, on the analysis scale.
struct Likelihood {
  double mean = 0.0;
  double se = 0.0;
};

// Shared validation for anything built from a published point + CI triple.
// Throws ValidationError; never returns on bad input.
void validate_ci(EffectScale scale, double point, double ci_lower, double ci_upper,
                 double ci_level);

// Recover the normal likelihood from a published CI: the analysis-scale mean
// is the transformed point estimate and the SE is the transformed CI width
// divided by twice the two-sided critical value for `ci_level`. The critical
// value is computed from the level, never hardcoded, so 90% and 99% intervals
// rescale correctly.
Likelihood derive_likelihood(EffectScale scale, double point, double ci_lower,
                             double ci_upper, double ci_level);

struct EffectEstimate {
  EffectScale scale = EffectScale::HR;
  double point = 1.0;
  double ci_lower = 1.0;
  double ci_upper = 1.0;
  double ci_level = 0.95;
  // Analysis-scale likelihood, filled in by from_ci.
  double log_mean = 0.0;
  double log_se = 0.0;
  // Non-fatal oddities noticed at construction (e.g. a point estimate far
  // from the CI midpoint, suggesting a non-symmetric published interval).
  std::vector<std::string> warnings;

  // The only constructor path; validates and derives the likelihood.
  // `consistency_tol` is the relative slack allowed between the published
  // point and the CI's implied centre before a warning is attached.
  static EffectEstimate from_ci(EffectScale scale, double point, double ci_lower,
                                double ci_upper, double ci_level = 0.95,
                                double consistency_tol = 0.05);
};

inline Likelihood derive_likelihood(const EffectEstimate& e) {
  return {e.log_mean, e.log_se};
}

// Two-sided p-value against the null of no effect.
inline double two_sided_p(const EffectEstimate& e) {
  return 2.0 * norm_cdf(-std::abs(e.log_mean) / e.log_se);
}

// Inverse of derive_likelihood: analysis-scale (mean, se) back to an
// original-scale interval at the given level.
inline std::pair<double, double> wald_ci(EffectScale scale, double mean, double se,
                                         double level) {
  if (!(se > 0.0) || !std::isfinite(se)) throw ValidationError("wald_ci: se must be positive");
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("wald_ci: level must be in (0,1)");
  double z = z_two_sided(level);
  return {from_analysis(scale, mean - z * se), from_analysis(scale, mean + z * se)};
}

// --- implementation -------------------------------------------------------

inline const char* scale_name(EffectScale s) {
  switch (s) {
    case EffectScale::HR: return "HR";
    case EffectScale::RR: return "RR";
    case EffectScale::OR: return "OR";
    case EffectScale::MeanDifference: return "MD";
    case EffectScale::RiskDifference: return "ARD";
  }
  return "?";
}

inline std::optional<EffectScale> parse_scale(std::string_view name) {
  if (name == "HR" || name == "hr") return EffectScale::HR;
  if (name == "RR" || name == "rr") return EffectScale::RR;
  if (name == "OR" || name == "or") return EffectScale::OR;
  if (name == "MD" || name == "md") return EffectScale::MeanDifference;
  if (name == "ARD" || name == "ard") return EffectScale::RiskDifference;
  return std::nullopt;
}

inline void validate_ci(EffectScale scale, double point, double ci_lower,
                        double ci_upper, double ci_level) {
  if (!std::isfinite(point) || !std::isfinite(ci_lower) || !std::isfinite(ci_upper))
    throw ValidationError("effect estimate: point and CI bounds must be finite");
  if (!(ci_level > 0.0 && ci_level < 1.0))
    throw ValidationError("effect estimate: ci_level must be in (0,1)");
  if (is_ratio_scale(scale) && (point <= 0.0 || ci_lower <= 0.0 || ci_upper <= 0.0))
    throw ValidationError("effect estimate: ratio-scale values must be positive");
  if (!(ci_lower < ci_upper))
    throw ValidationError("effect estimate: CI is degenerate (lower must be < upper)");
  if (point < ci_lower || point > ci_upper)
    throw ValidationError("effect estimate: point estimate lies outside its CI");
}

inline Likelihood derive_likelihood(EffectScale scale, double point, double ci_lower,
                                    double ci_upper, double ci_level) {
  validate_ci(scale, point, ci_lower, ci_upper, ci_level);
  double z = z_two_sided(ci_level);
  Likelihood lk;
  lk.mean = to_analysis(scale, point);
  lk.se = (to_analysis(scale, ci_upper) - to_analysis(scale, ci_lower)) / (2.0 * z);
  return lk;
}

inline EffectEstimate EffectEstimate::from_ci(EffectScale scale, double point,
                                              double ci_lower, double ci_upper,
                                              double ci_level, double consistency_tol) {
  Likelihood lk = derive_likelihood(scale, point, ci_lower, ci_upper, ci_level);
  EffectEstimate e;
  e.scale = scale;
  e.point = point;
  e.ci_lower = ci_lower;
  e.ci_upper = ci_upper;
  e.ci_level = ci_level;
  e.log_mean = lk.mean;
  e.log_se = lk.se;

  // Published intervals are usually symmetric on the analysis scale. When the
  // point sits away from the implied centre the normal model is only an
  // approximation of the published analysis: keep going, but say so.
  double centre = 0.5 * (to_analysis(scale, ci_lower) + to_analysis(scale, ci_upper));
  double half_width = 0.5 * (to_analysis(scale, ci_upper) - to_analysis(scale, ci_lower));
  double drift = std::abs(lk.mean - centre);
  if (drift > consistency_tol * half_width) {
    e.warnings.push_back(
        std::string("point estimate is off-centre of its interval on the ") +
        (is_ratio_scale(scale) ? "log" : "additive") +
        " scale; likelihood mean keeps the published point");
  }
  return e;
}

}  // namespace rctv

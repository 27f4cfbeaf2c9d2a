#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

#include "rctv/effect.hpp"
#include "rctv/error.hpp"

// Clinical thresholds a verdict is judged against: the minimal clinically
// important difference on the benefit and harm sides, a region of practical
// equivalence (ROPE) bracketing the null, and an optional non-inferiority
// margin. All are stated on the original scale of the effect measure.

namespace rctv {

enum class BenefitDirection : std::uint8_t { LowerIsBenefit, HigherIsBenefit };

const char* direction_name(BenefitDirection d);
std::optional<BenefitDirection> parse_direction(std::string_view name);

struct RopeInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct ThresholdSet {
  BenefitDirection direction = BenefitDirection::LowerIsBenefit;
  double mcid_benefit = 0.0;
  double mcid_harm = 0.0;
  RopeInterval rope{};
  std::optional<double> ni_margin;  // harm-side bound for non-inferiority calls

  // Builds a threshold set with defaults applied:
  //  * mcid_harm omitted  -> mirror of mcid_benefit on the analysis scale
  //    (the reciprocal for ratio measures, the negation for additive ones)
  //  * rope omitted       -> (1/1.1, 1.1) for ratio measures; additive scales
  //    have no natural unit, so an explicit ROPE is required there.
  // Validates the result before returning.
  static ThresholdSet make(EffectScale scale, BenefitDirection direction,
                           double mcid_benefit,
                           std::optional<double> mcid_harm = std::nullopt,
                           std::optional<RopeInterval> rope = std::nullopt,
                           std::optional<double> ni_margin = std::nullopt);

  // Coherence checks (throws ValidationError): thresholds on the correct
  // side of the null, ROPE a proper interval around the null, ROPE strictly
  // inside the MCID band, NI margin on the harm side.
  void validate(EffectScale scale) const;
};

// Classification and posterior tail probabilities all work in one fixed frame:
// the analysis scale re-signed so that benefit is negative and harm positive,
// whichever direction the measure runs in. `sign` maps analysis-scale values
// into that frame (multiply), and maps them back out (multiply again).
struct CanonicalThresholds {
  double sign = 1.0;  // +1 when lower values are benefit, -1 otherwise
  double b = 0.0;     // MCID benefit bound, < 0
  double h = 0.0;     // MCID harm bound, > 0
  double r_lo = 0.0;  // ROPE lower edge, < 0
  double r_up = 0.0;  // ROPE upper edge, > 0
  std::optional<double> ni;  // non-inferiority margin, > 0 when present
};

CanonicalThresholds canonical_thresholds(EffectScale scale, const ThresholdSet& t);

// --- implementation -------------------------------------------------------

inline const char* direction_name(BenefitDirection d) {
  return d == BenefitDirection::LowerIsBenefit ? "lower" : "higher";
}

inline std::optional<BenefitDirection> parse_direction(std::string_view name) {
  if (name == "lower" || name == "lower_is_benefit") return BenefitDirection::LowerIsBenefit;
  if (name == "higher" || name == "higher_is_benefit") return BenefitDirection::HigherIsBenefit;
  return std::nullopt;
}

inline CanonicalThresholds canonical_thresholds(EffectScale scale, const ThresholdSet& t) {
  CanonicalThresholds c;
  c.sign = (t.direction == BenefitDirection::LowerIsBenefit) ? 1.0 : -1.0;
  c.b = c.sign * to_analysis(scale, t.mcid_benefit);
  c.h = c.sign * to_analysis(scale, t.mcid_harm);
  double r0 = c.sign * to_analysis(scale, t.rope.lower);
  double r1 = c.sign * to_analysis(scale, t.rope.upper);
  c.r_lo = std::min(r0, r1);
  c.r_up = std::max(r0, r1);
  if (t.ni_margin) c.ni = c.sign * to_analysis(scale, *t.ni_margin);
  return c;
}

inline void ThresholdSet::validate(EffectScale scale) const {
  if (!std::isfinite(mcid_benefit) || !std::isfinite(mcid_harm) ||
      !std::isfinite(rope.lower) || !std::isfinite(rope.upper))
    throw ValidationError("thresholds: values must be finite");
  if (is_ratio_scale(scale) &&
      (mcid_benefit <= 0.0 || mcid_harm <= 0.0 || rope.lower <= 0.0 || rope.upper <= 0.0 ||
       (ni_margin && *ni_margin <= 0.0)))
    throw ValidationError("thresholds: ratio-scale thresholds must be positive");

  CanonicalThresholds c = canonical_thresholds(scale, *this);
  if (!(c.b < 0.0))
    throw ValidationError("thresholds: mcid_benefit must lie on the benefit side of the null");
  if (!(c.h > 0.0))
    throw ValidationError("thresholds: mcid_harm must lie on the harm side of the null");
  if (!(c.r_lo < 0.0 && 0.0 < c.r_up))
    throw ValidationError("thresholds: rope must straddle the null");
  if (!(c.b < c.r_lo && c.r_up < c.h))
    throw ValidationError("thresholds: rope must lie strictly inside the MCID band");
  if (c.ni && !(*c.ni > 0.0))
    throw ValidationError("thresholds: ni_margin must lie on the harm side of the null");
}

inline ThresholdSet ThresholdSet::make(EffectScale scale, BenefitDirection direction,
                                       double mcid_benefit,
                                       std::optional<double> mcid_harm,
                                       std::optional<RopeInterval> rope,
                                       std::optional<double> ni_margin) {
  ThresholdSet t;
  t.direction = direction;
  t.mcid_benefit = mcid_benefit;
  if (is_ratio_scale(scale) && !(mcid_benefit > 0.0))
    throw ValidationError("thresholds: ratio-scale mcid_benefit must be positive");
  // Mirror on the analysis scale: reciprocal for ratios, negation otherwise.
  t.mcid_harm = mcid_harm ? *mcid_harm
                          : from_analysis(scale, -to_analysis(scale, mcid_benefit));
  if (rope) {
    t.rope = *rope;
  } else if (is_ratio_scale(scale)) {
    t.rope = RopeInterval{1.0 / 1.1, 1.1};
  } else {
    throw ValidationError(
        "thresholds: additive scales have no default rope; supply rope bounds");
  }
  t.ni_margin = ni_margin;
  t.validate(scale);
  return t;
}

}  // namespace rctv

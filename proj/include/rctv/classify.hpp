#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "rctv/effect.hpp"
#include "rctv/normal.hpp"
#include "rctv/thresholds.hpp"
#include "rctv/verdict.hpp"

// Confidence-interval classification. All three tracks (primary six-class
// verdict, conditional equivalence testing, non-inferiority) evaluate the
// interval in the canonical benefit-negative frame from thresholds.hpp.

namespace rctv {

namespace detail {

inline std::string fmt3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

struct CanonicalInterval {
  double lo = 0.0;
  double hi = 0.0;
};

inline CanonicalInterval canonical_interval(const EffectEstimate& e, double sign) {
  double a = sign * to_analysis(e.scale, e.ci_lower);
  double b = sign * to_analysis(e.scale, e.ci_upper);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace detail

// Six-class verdict from the CI alone. Rules are checked in order and the
// first match wins; with a valid threshold set (ROPE strictly inside the MCID
// band) at most one of the five decisive rules can match, so the order only
// settles which rationale is reported, not the class.
//
// In the canonical frame (benefit negative), with CI [lo, hi], MCID bounds
// b < 0 < h and ROPE (r_lo, r_up):
//   Positive      hi < b                  whole interval beyond the benefit MCID
//   Imprecise(+)  hi < 0 and lo < b < hi  benefit shown, size straddles the MCID
//   Harmful       lo > h                  whole interval beyond the harm MCID
//   Neutral       r_lo < lo, hi < r_up    interval inside the ROPE
//   Negative      lo <= 0 <= hi, b < lo, hi < h, not Neutral
//                                         null kept, meaningful effects excluded
//   Inconclusive  anything else
// Comparisons are strict, so an interval endpoint exactly on a threshold
// falls through to the less decisive class.
inline Verdict classify_frequentist(const EffectEstimate& e, const ThresholdSet& t) {
  t.validate(e.scale);
  CanonicalThresholds c = canonical_thresholds(e.scale, t);
  auto [lo, hi] = detail::canonical_interval(e, c.sign);

  Verdict v;
  v.track = AnalysisTrack::Frequentist;
  const bool includes_null = (lo <= 0.0 && 0.0 <= hi);
  const bool inside_rope = (lo > c.r_lo && hi < c.r_up);

  if (hi < c.b) {
    v.cls = VerdictClass::Positive;
    v.rationale.push_back("entire CI beyond the benefit MCID");
    v.rationale.push_back("CI excludes the null on the benefit side");
  } else if (hi < 0.0 && lo < c.b && c.b < hi) {
    v.cls = VerdictClass::ImprecisePlus;
    v.rationale.push_back("CI excludes the null on the benefit side");
    v.rationale.push_back("CI straddles the benefit MCID: effect size imprecise");
  } else if (lo > c.h) {
    v.cls = VerdictClass::Harmful;
    v.rationale.push_back("entire CI beyond the harm MCID");
    v.rationale.push_back("CI excludes the null on the harm side");
  } else if (inside_rope) {
    v.cls = VerdictClass::Neutral;
    v.rationale.push_back("entire CI within the region of practical equivalence");
    if (!includes_null) {
      // A formally significant interval confined to the ROPE: statistically
      // distinguishable from the null, clinically equivalent to it.
      v.rationale.push_back("CI excludes the null yet stays inside the ROPE: "
                            "statistically significant, clinically null");
    }
  } else if (includes_null && lo > c.b && hi < c.h) {
    v.cls = VerdictClass::Negative;
    v.rationale.push_back("CI includes the null");
    v.rationale.push_back("CI excludes both MCID-sized benefit and MCID-sized harm");
  } else {
    v.cls = VerdictClass::Inconclusive;
    if (includes_null && lo < c.b && hi > c.h)
      v.rationale.push_back("CI includes the null and both MCID-sized effects");
    else if (includes_null && lo < c.b)
      v.rationale.push_back("CI includes the null and MCID-sized benefit");
    else if (includes_null && hi > c.h)
      v.rationale.push_back("CI includes the null and MCID-sized harm");
    else
      v.rationale.push_back("CI too wide to place in a decisive class");
  }
  return v;
}

// Conditional equivalence testing: difference test first, then two one-sided
// tests against the ROPE edges (used as the equivalence margins).
//   reject null            -> Positive (a difference was shown)
//   both TOST reject       -> Negative (effect confined within the margins)
//   otherwise              -> Inconclusive
inline Verdict classify_cet(const EffectEstimate& e, const ThresholdSet& t,
                            double alpha = 0.05) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ValidationError("classify_cet: alpha must be in (0, 0.5)");
  t.validate(e.scale);
  CanonicalThresholds c = canonical_thresholds(e.scale, t);
  double m = c.sign * e.log_mean;
  double se = e.log_se;

  Verdict v;
  v.track = AnalysisTrack::ConditionalEquivalence;
  double p_diff = two_sided_p(e);
  if (p_diff < alpha) {
    v.cls = VerdictClass::Positive;
    v.rationale.push_back("difference test rejects the null (p = " +
                          detail::fmt3(p_diff) + " < alpha)");
    return v;
  }
  // H0a: theta <= r_lo, rejected for large (m - r_lo)/se.
  // H0b: theta >= r_up, rejected for small (m - r_up)/se.
  double p_low = norm_cdf(-(m - c.r_lo) / se);
  double p_up = norm_cdf((m - c.r_up) / se);
  v.rationale.push_back("difference test fails to reject (p = " +
                        detail::fmt3(p_diff) + ")");
  if (p_low < alpha && p_up < alpha) {
    v.cls = VerdictClass::Negative;
    v.rationale.push_back("both one-sided tests reject outside the equivalence margins "
                          "(p = " + detail::fmt3(p_low) + ", " + detail::fmt3(p_up) + ")");
  } else {
    v.cls = VerdictClass::Inconclusive;
    v.rationale.push_back("equivalence not shown (one-sided p = " +
                          detail::fmt3(p_low) + ", " + detail::fmt3(p_up) + ")");
  }
  return v;
}

enum class NonInferiorityCall : std::uint8_t { NonInferior, Inferior, Inconclusive };

inline const char* noninferiority_key(NonInferiorityCall c) {
  switch (c) {
    case NonInferiorityCall::NonInferior: return "non_inferior";
    case NonInferiorityCall::Inferior: return "inferior";
    case NonInferiorityCall::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct NonInferiorityResult {
  NonInferiorityCall call = NonInferiorityCall::Inconclusive;
  std::vector<std::string> rationale;
};

// Margin rule: non-inferior when the harm-side CI bound stays inside the
// margin, inferior when the whole interval lies beyond it.
inline NonInferiorityResult classify_noninferiority(const EffectEstimate& e,
                                                    const ThresholdSet& t) {
  t.validate(e.scale);
  if (!t.ni_margin)
    throw ValidationError("classify_noninferiority: no ni_margin in threshold set");
  CanonicalThresholds c = canonical_thresholds(e.scale, t);
  auto [lo, hi] = detail::canonical_interval(e, c.sign);
  double margin = *c.ni;

  NonInferiorityResult r;
  if (hi < margin) {
    r.call = NonInferiorityCall::NonInferior;
    r.rationale.push_back("harm-side CI bound inside the non-inferiority margin");
  } else if (lo > margin) {
    r.call = NonInferiorityCall::Inferior;
    r.rationale.push_back("entire CI beyond the non-inferiority margin");
  } else {
    r.call = NonInferiorityCall::Inconclusive;
    r.rationale.push_back("CI crosses the non-inferiority margin");
  }
  return r;
}

}  // namespace rctv

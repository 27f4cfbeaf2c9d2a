#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// The six-way verdict vocabulary shared by every analysis track.

namespace rctv {

enum class VerdictClass : std::uint8_t {
  Positive,       // clinically meaningful benefit established
  ImprecisePlus,  // benefit established, size compatible with sub-MCID
  Neutral,        // effect confined to the region of practical equivalence
  Negative,       // meaningful effect ruled out in both directions, null not resolved
  Inconclusive,   // compatible with meaningful benefit and meaningful harm alike
  Harmful,        // clinically meaningful harm established
};

enum class AnalysisTrack : std::uint8_t {
  Frequentist,
  Bayesian,
  ConditionalEquivalence,
  NonInferiority,
};

struct Verdict {
  VerdictClass cls = VerdictClass::Inconclusive;
  AnalysisTrack track = AnalysisTrack::Frequentist;
  // Which rules fired and why, in evaluation order. Human-readable, stable.
  std::vector<std::string> rationale;
};

// Machine key: lower_snake, used in JSON and CSV.
const char* verdict_key(VerdictClass v);
// Display label, used in reports and plots.
const char* verdict_label(VerdictClass v);
std::optional<VerdictClass> parse_verdict(std::string_view key);

const char* track_key(AnalysisTrack t);
std::optional<AnalysisTrack> parse_track(std::string_view key);

// --- implementation -------------------------------------------------------

inline const char* verdict_key(VerdictClass v) {
  switch (v) {
    case VerdictClass::Positive: return "positive";
    case VerdictClass::ImprecisePlus: return "imprecise_plus";
    case VerdictClass::Neutral: return "neutral";
    case VerdictClass::Negative: return "negative";
    case VerdictClass::Inconclusive: return "inconclusive";
    case VerdictClass::Harmful: return "harmful";
  }
  return "?";
}

inline const char* verdict_label(VerdictClass v) {
  switch (v) {
    case VerdictClass::Positive: return "Positive";
    case VerdictClass::ImprecisePlus: return "Imprecise (+)";
    case VerdictClass::Neutral: return "Neutral";
    case VerdictClass::Negative: return "Negative";
    case VerdictClass::Inconclusive: return "Inconclusive";
    case VerdictClass::Harmful: return "Harmful";
  }
  return "?";
}

inline std::optional<VerdictClass> parse_verdict(std::string_view key) {
  if (key == "positive") return VerdictClass::Positive;
  if (key == "imprecise_plus") return VerdictClass::ImprecisePlus;
  if (key == "neutral") return VerdictClass::Neutral;
  if (key == "negative") return VerdictClass::Negative;
  if (key == "inconclusive") return VerdictClass::Inconclusive;
  if (key == "harmful") return VerdictClass::Harmful;
  return std::nullopt;
}

inline const char* track_key(AnalysisTrack t) {
  switch (t) {
    case AnalysisTrack::Frequentist: return "frequentist";
    case AnalysisTrack::Bayesian: return "bayesian";
    case AnalysisTrack::ConditionalEquivalence: return "conditional_equivalence";
    case AnalysisTrack::NonInferiority: return "noninferiority";
  }
  return "?";
}

inline std::optional<AnalysisTrack> parse_track(std::string_view key) {
  if (key == "frequentist") return AnalysisTrack::Frequentist;
  if (key == "bayesian") return AnalysisTrack::Bayesian;
  if (key == "conditional_equivalence") return AnalysisTrack::ConditionalEquivalence;
  if (key == "noninferiority") return AnalysisTrack::NonInferiority;
  return std::nullopt;
}

}  // namespace rctv

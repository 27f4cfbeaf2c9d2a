#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rctv/effect.hpp"
#include "rctv/thresholds.hpp"

// One trial as supplied by the user, before any analysis. CSV and JSON both
// decode to this; field names are identical in the two formats and unknown
// fields are rejected rather than ignored, so a typo cannot silently drop a
// threshold.

namespace rctv {

struct TrialInputRecord {
  std::string id;
  std::string name;
  std::string endpoint;  // optional free text
  EffectScale scale = EffectScale::HR;
  double point = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double ci_level = 0.95;
  double mcid_benefit = 0.0;
  std::optional<double> mcid_harm;
  std::optional<double> rope_lower;
  std::optional<double> rope_upper;
  std::optional<double> ni_margin;
  std::optional<double> cer;  // control event rate, enables ARR
  std::optional<BenefitDirection> direction;  // default: lower is benefit
  // Where this record came from, for diagnostics: 1-based CSV line, or
  // 0-based JSON array index with line 0.
  std::size_t source_line = 0;
  std::size_t index = 0;
};

// Top-level JSON array of objects.
std::vector<TrialInputRecord> parse_trials_json(const std::string& text);
// CSV with a header row; empty cells stand for absent optional fields.
std::vector<TrialInputRecord> parse_trials_csv(const std::string& text);
// Dispatch on leading non-whitespace byte: '[' means JSON, else CSV.
std::vector<TrialInputRecord> parse_trials(const std::string& text);

}  // namespace rctv

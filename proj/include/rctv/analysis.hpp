#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rctv/config.hpp"
#include "rctv/record.hpp"
#include "rctv/trial_input.hpp"

// The analysis engine shared by the CLI subcommands and the tests: resolve
// effective thresholds, run the requested tracks, assemble AnalysisRecords.

namespace rctv {

// One --prior override: replace or add a grid entry, or drop one.
struct PriorOverride {
  PriorLabel label = PriorLabel::Skeptical;
  bool remove = false;  // true for "label=off"
  double mean = 0.0;    // analysis scale; ignored when remove
  double sd = 0.0;
};

// Parses "label=mean,sd" or "label=off". Throws ValidationError on anything else.
PriorOverride parse_prior_override(const std::string& text);

struct AnalysisOptions {
  Config config{};
  bool reanalyze = false;       // run the Bayesian track
  bool with_cet = false;        // run conditional equivalence testing
  double cet_alpha = 0.05;
  // Flag-level threshold overrides (highest precedence).
  std::optional<double> mcid_harm;
  std::optional<RopeInterval> rope;
  std::optional<double> ni_margin;
  std::vector<PriorOverride> prior_overrides;
};

// Thresholds for one record after applying the resolution order
// flag > record field > config file > built-in default.
ThresholdSet effective_thresholds(const TrialInputRecord& r, const AnalysisOptions& o);

// Full pipeline for one record. Throws ValidationError (annotated with the
// record's id and source position) on invalid input.
AnalysisRecord analyze_trial(const TrialInputRecord& r, const AnalysisOptions& o);

std::vector<AnalysisRecord> analyze_batch(const std::vector<TrialInputRecord>& rs,
                                          const AnalysisOptions& o);

}  // namespace rctv

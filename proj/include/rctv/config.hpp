#pragma once

#include <optional>
#include <string>

#include "rctv/bayes_rules.hpp"
#include "rctv/prior.hpp"

// Optional INI-style configuration. Everything here has a built-in default;
// the resolution order for any threshold is
//   command-line flag > per-record field > config file > built-in default.

namespace rctv {

struct PlotOptions {
  double forest_width = 860.0;
  double forest_row_height = 34.0;
};

struct Config {
  // [thresholds]
  std::optional<double> mcid_harm;
  std::optional<double> rope_lower;
  std::optional<double> rope_upper;
  std::optional<double> ni_margin;
  // [priors]
  PriorGridOptions priors{};
  // [rules]
  BayesRuleTable rules{};
  // [plots]
  PlotOptions plots{};
};

// Parses `key = value` lines under [section] headers. '#' and ';' start
// comments. Unknown sections or keys are errors with a line number.
Config parse_config(const std::string& text);

}  // namespace rctv

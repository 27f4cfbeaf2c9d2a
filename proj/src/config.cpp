#include "rctv/config.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <string_view>

#include "rctv/error.hpp"

namespace rctv {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view v, std::size_t line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    fail(line, "expected a number, got '" + std::string(v) + "'");
  return out;
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;

  // Writable slots per section; config keys map straight onto struct fields.
  std::map<std::string, std::optional<double>*> threshold_slots{
      {"mcid_harm", &cfg.mcid_harm},
      {"rope_lower", &cfg.rope_lower},
      {"rope_upper", &cfg.rope_upper},
      {"ni_margin", &cfg.ni_margin},
  };
  std::map<std::string, double*> prior_slots{
      {"belief_sd", &cfg.priors.belief_sd},
      {"opposing_tail_mass", &cfg.priors.opposing_tail_mass},
  };
  std::map<std::string, double*> rule_slots{
      {"harmful_severe_min", &cfg.rules.harmful_severe_min},
      {"harmful_any_harm_min", &cfg.rules.harmful_any_harm_min},
      {"positive_mcid_min", &cfg.rules.positive_mcid_min},
      {"positive_rope_max", &cfg.rules.positive_rope_max},
      {"positive_harm_max", &cfg.rules.positive_harm_max},
      {"neutral_rope_min", &cfg.rules.neutral_rope_min},
      {"neutral_mcid_max", &cfg.rules.neutral_mcid_max},
      {"negative_rope_min", &cfg.rules.negative_rope_min},
      {"negative_mcid_max", &cfg.rules.negative_mcid_max},
      {"negative_severe_max", &cfg.rules.negative_severe_max},
      {"imprecise_benefit_min", &cfg.rules.imprecise_benefit_min},
      {"imprecise_mcid_lo", &cfg.rules.imprecise_mcid_lo},
      {"imprecise_mcid_hi", &cfg.rules.imprecise_mcid_hi},
  };
  std::map<std::string, double*> plot_slots{
      {"forest_width", &cfg.plots.forest_width},
      {"forest_row_height", &cfg.plots.forest_row_height},
  };

  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (eol == std::string::npos ? text.size() : eol) - pos);
    pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (std::size_t hash = line.find_first_of("#;"); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "thresholds" && section != "priors" && section != "rules" &&
          section != "plots")
        fail(line_no, "unknown section [" + section + "]");
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (section.empty()) fail(line_no, "key '" + key + "' outside any section");

    double num = parse_number(value, line_no);
    if (section == "thresholds") {
      auto it = threshold_slots.find(key);
      if (it == threshold_slots.end()) fail(line_no, "unknown key '" + key + "' in [thresholds]");
      *it->second = num;
    } else if (section == "priors") {
      auto it = prior_slots.find(key);
      if (it == prior_slots.end()) fail(line_no, "unknown key '" + key + "' in [priors]");
      *it->second = num;
    } else if (section == "rules") {
      auto it = rule_slots.find(key);
      if (it == rule_slots.end()) fail(line_no, "unknown key '" + key + "' in [rules]");
      *it->second = num;
    } else {  // plots
      auto it = plot_slots.find(key);
      if (it == plot_slots.end()) fail(line_no, "unknown key '" + key + "' in [plots]");
      *it->second = num;
    }
  }

  if (cfg.rope_lower.has_value() != cfg.rope_upper.has_value())
    throw ValidationError("config: rope_lower and rope_upper must be set together");
  if (!(cfg.priors.belief_sd > 0.0))
    throw ValidationError("config: belief_sd must be positive");
  if (!(cfg.priors.opposing_tail_mass > 0.0 && cfg.priors.opposing_tail_mass < 0.5))
    throw ValidationError("config: opposing_tail_mass must be in (0, 0.5)");
  return cfg;
}

}  // namespace rctv

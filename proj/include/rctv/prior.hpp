#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rctv/effect.hpp"
#include "rctv/error.hpp"
#include "rctv/normal.hpp"
#include "rctv/thresholds.hpp"

// Prior grid for the Bayesian reanalysis. Priors are normal on the analysis
// scale. The stock grid holds three fixed stances plus an optional
// evidence-based prior:
//   skeptical    centred on no effect, moderately concentrated
//   optimistic   centred on an exactly-MCID benefit
//   pessimistic  centred on an exactly-MCID harm
//   data-derived centred on external evidence (e.g. a meta-analysis)

namespace rctv {

enum class PriorLabel : std::uint8_t { Skeptical, Optimistic, Pessimistic, DataDerived };

const char* prior_key(PriorLabel p);
std::optional<PriorLabel> parse_prior_label(std::string_view key);

struct PriorSpec {
  PriorLabel label = PriorLabel::Skeptical;
  double mean = 0.0;  // analysis scale
  double sd = 0.0;
};

struct PriorGridOptions {
  // Default dispersion of the stock priors. 0.355 puts ~95% of the skeptical
  // prior's mass between one third and three times the null on a ratio scale:
  // effects beyond that are considered implausible a priori.
  double belief_sd = 0.355;
  // Directional priors must stay honest: at least this much prior mass on the
  // opposing side of the null. Their sd is widened when belief_sd alone would
  // concentrate them harder than this allows.
  double opposing_tail_mass = 0.15;
};

// Smallest sd for which a normal prior centred at `mean` keeps `tail_mass`
// probability on the other side of the null.
inline double constraint_sd(double mean, double tail_mass) {
  if (!(tail_mass > 0.0 && tail_mass < 0.5))
    throw ValidationError("constraint_sd: tail mass must be in (0, 0.5)");
  return std::abs(mean) / norm_quantile(1.0 - tail_mass);
}

// The grid. Placement uses the analysis-scale threshold values directly, so
// a higher-is-benefit measure gets its optimistic prior above the null.
// `meta` (analysis-scale mean/se of external evidence) adds the data-derived
// prior when present.
inline std::vector<PriorSpec> build_prior_grid(EffectScale scale, const ThresholdSet& t,
                                               std::optional<Likelihood> meta = std::nullopt,
                                               const PriorGridOptions& opt = {}) {
  t.validate(scale);
  if (!(opt.belief_sd > 0.0))
    throw ValidationError("build_prior_grid: belief_sd must be positive");
  double b = to_analysis(scale, t.mcid_benefit);
  double h = to_analysis(scale, t.mcid_harm);

  auto shifted_sd = [&](double mean) {
    return std::max(opt.belief_sd, constraint_sd(mean, opt.opposing_tail_mass));
  };

  std::vector<PriorSpec> grid;
  grid.push_back({PriorLabel::Skeptical, 0.0, opt.belief_sd});
  grid.push_back({PriorLabel::Optimistic, b, shifted_sd(b)});
  grid.push_back({PriorLabel::Pessimistic, h, shifted_sd(h)});
  if (meta) {
    if (!(meta->se > 0.0))
      throw ValidationError("build_prior_grid: data-derived prior needs a positive se");
    grid.push_back({PriorLabel::DataDerived, meta->mean, meta->se});
  }
  return grid;
}

// --- implementation -------------------------------------------------------

inline const char* prior_key(PriorLabel p) {
  switch (p) {
    case PriorLabel::Skeptical: return "skeptical";
    case PriorLabel::Optimistic: return "optimistic";
    case PriorLabel::Pessimistic: return "pessimistic";
    case PriorLabel::DataDerived: return "data_derived";
  }
  return "?";
}

inline std::optional<PriorLabel> parse_prior_label(std::string_view key) {
  if (key == "skeptical") return PriorLabel::Skeptical;
  if (key == "optimistic") return PriorLabel::Optimistic;
  if (key == "pessimistic") return PriorLabel::Pessimistic;
  if (key == "data_derived" || key == "data-derived") return PriorLabel::DataDerived;
  return std::nullopt;
}

}  // namespace rctv

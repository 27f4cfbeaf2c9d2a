#include "rctv/analysis.hpp"

#include <charconv>
#include <set>
#include <string>

#include "rctv/bayes_rules.hpp"
#include "rctv/classify.hpp"
#include "rctv/error.hpp"
#include "rctv/report.hpp"
#include "rctv/sensitivity.hpp"

namespace rctv {

namespace {

double parse_double(std::string_view v, const char* what) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ValidationError(std::string(what) + ": expected a number, got '" +
                          std::string(v) + "'");
  return out;
}

std::string record_location(const TrialInputRecord& r) {
  std::string loc = "record " + std::to_string(r.index);
  if (!r.id.empty()) loc += " (id '" + r.id + "')";
  if (r.source_line > 0) loc += " at line " + std::to_string(r.source_line);
  return loc;
}

}  // namespace

PriorOverride parse_prior_override(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ValidationError("--prior: expected 'label=mean,sd' or 'label=off', got '" +
                          text + "'");
  std::string label_text = text.substr(0, eq);
  auto label = parse_prior_label(label_text);
  if (!label)
    throw ValidationError("--prior: unknown label '" + label_text +
                          "' (skeptical, optimistic, pessimistic, data_derived)");
  PriorOverride ov;
  ov.label = *label;
  std::string rest = text.substr(eq + 1);
  if (rest == "off") {
    ov.remove = true;
    return ov;
  }
  auto comma = rest.find(',');
  if (comma == std::string::npos)
    throw ValidationError("--prior: expected 'mean,sd' after '=', got '" + rest + "'");
  ov.mean = parse_double(std::string_view(rest).substr(0, comma), "--prior mean");
  ov.sd = parse_double(std::string_view(rest).substr(comma + 1), "--prior sd");
  if (!(ov.sd > 0.0)) throw ValidationError("--prior: sd must be positive");
  return ov;
}

ThresholdSet effective_thresholds(const TrialInputRecord& r, const AnalysisOptions& o) {
  // Resolution order everywhere: flag > record field > config file > default.
  std::optional<double> mcid_harm = o.mcid_harm;
  if (!mcid_harm) mcid_harm = r.mcid_harm;
  if (!mcid_harm) mcid_harm = o.config.mcid_harm;

  std::optional<RopeInterval> rope = o.rope;
  if (!rope) {
    if (r.rope_lower.has_value() != r.rope_upper.has_value())
      throw ValidationError("rope_lower and rope_upper must be given together");
    if (r.rope_lower) rope = RopeInterval{*r.rope_lower, *r.rope_upper};
  }
  if (!rope && o.config.rope_lower)
    rope = RopeInterval{*o.config.rope_lower, *o.config.rope_upper};

  std::optional<double> ni = o.ni_margin;
  if (!ni) ni = r.ni_margin;
  if (!ni) ni = o.config.ni_margin;

  return ThresholdSet::make(r.scale, r.direction.value_or(BenefitDirection::LowerIsBenefit),
                            r.mcid_benefit, mcid_harm, rope, ni);
}

AnalysisRecord analyze_trial(const TrialInputRecord& r, const AnalysisOptions& o) {
  try {
    AnalysisRecord rec;
    rec.trial = TrialMeta{r.id, r.name, r.endpoint};
    rec.estimate = EffectEstimate::from_ci(r.scale, r.point, r.ci_lower, r.ci_upper,
                                           r.ci_level);
    rec.thresholds = effective_thresholds(r, o);
    rec.frequentist = classify_frequentist(rec.estimate, rec.thresholds);
    if (o.with_cet) rec.cet = classify_cet(rec.estimate, rec.thresholds, o.cet_alpha);
    if (rec.thresholds.ni_margin)
      rec.noninferiority = classify_noninferiority(rec.estimate, rec.thresholds);

    if (o.reanalyze) {
      auto grid = build_prior_grid(r.scale, rec.thresholds, std::nullopt, o.config.priors);
      for (const auto& ov : o.prior_overrides) {
        auto match = [&](const PriorSpec& p) { return p.label == ov.label; };
        if (ov.remove) {
          std::erase_if(grid, match);
          continue;
        }
        bool found = false;
        for (auto& p : grid)
          if (match(p)) {
            p.mean = ov.mean;
            p.sd = ov.sd;
            found = true;
          }
        if (!found) grid.push_back(PriorSpec{ov.label, ov.mean, ov.sd});
      }
      if (grid.size() < 3)
        throw ValidationError("prior grid has fewer than three priors after overrides; "
                              "sensitivity over the grid would be meaningless");
      Likelihood lk = derive_likelihood(rec.estimate);
      for (const auto& prior : grid) {
        NormalPosterior post = conjugate_posterior(prior, lk);
        rec.posteriors.push_back(
            posterior_metrics(prior, post, r.scale, rec.thresholds, r.cer));
      }
      rec.bayesian = classify_bayesian(rec.posteriors, o.config.rules);
      rec.sensitivity = prior_sensitivity(rec.posteriors);
      rec.cer = r.cer;
    }

    rec.narrative = narrative_for(rec);
    return rec;
  } catch (const ValidationError& e) {
    throw ValidationError(record_location(r) + ": " + e.what());
  }
}

std::vector<AnalysisRecord> analyze_batch(const std::vector<TrialInputRecord>& rs,
                                          const AnalysisOptions& o) {
  std::set<std::string> seen;
  for (const auto& r : rs)
    if (!seen.insert(r.id).second)
      throw ValidationError(record_location(r) + ": duplicate trial id");
  std::vector<AnalysisRecord> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back(analyze_trial(r, o));
  return out;
}

}  // namespace rctv

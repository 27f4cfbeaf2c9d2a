#include "rctv/report.hpp"

#include <cstdio>
#include <map>
#include <string>

#include "rctv/bayes_rules.hpp"
#include "rctv/error.hpp"

namespace rctv {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

// Ratio measures read naturally with two decimals; additive measures keep
// three significant digits.
std::string fmt_val(EffectScale s, double x) {
  return is_ratio_scale(s) ? fmt("%.2f", x) : fmt("%.3g", x);
}

std::string fmt_pct(double p) { return fmt("%.1f", 100.0 * p) + "%"; }

std::string estimate_phrase(const EffectEstimate& e) {
  return std::string(scale_name(e.scale)) + " " + fmt_val(e.scale, e.point) + " (" +
         fmt("%.0f", 100.0 * e.ci_level) + "% CI " + fmt_val(e.scale, e.ci_lower) +
         " to " + fmt_val(e.scale, e.ci_upper) + ")";
}

// One narrative template per verdict class. The bracketed tail is appended
// only when a Bayesian grid is present. Deliberately absent from every
// template: any phrasing equating a null result with "no difference".
const char* base_template(VerdictClass cls) {
  switch (cls) {
    case VerdictClass::Positive:
      return "{{estimate}} establishes a clinically meaningful benefit: the whole "
             "interval lies beyond the benefit threshold of {{mcid_benefit}}.";
    case VerdictClass::ImprecisePlus:
      return "{{estimate}} establishes a benefit but leaves its size imprecise: the "
             "interval excludes the null yet straddles the benefit threshold of "
             "{{mcid_benefit}}, so the effect may fall short of the minimal "
             "clinically important difference.";
    case VerdictClass::Neutral:
      return "{{estimate}} confines the effect to the region of practical "
             "equivalence ({{rope_lower}} to {{rope_upper}}): whatever effect "
             "remains is too small to matter clinically.";
    case VerdictClass::Negative:
      return "{{estimate}} is consistent with the null and rules out clinically "
             "meaningful effects in both directions (benefit beyond "
             "{{mcid_benefit}} and harm beyond {{mcid_harm}}); exact equivalence "
             "is not claimed.";
    case VerdictClass::Inconclusive:
      return "{{estimate}} remains compatible with clinically meaningful benefit "
             "and with clinically meaningful harm alike; this trial does not "
             "discriminate between those possibilities, and its non-significance "
             "is not evidence of absence.";
    case VerdictClass::Harmful:
      return "{{estimate}} establishes clinically meaningful harm: the whole "
             "interval lies beyond the harm threshold of {{mcid_harm}}.";
  }
  return "";
}

const char* bayes_template(VerdictClass cls) {
  switch (cls) {
    case VerdictClass::Positive:
      return " Under the skeptical prior, the probability of an MCID-sized benefit "
             "is {{pr_mcid_benefit}}.";
    case VerdictClass::ImprecisePlus:
      return " Under the skeptical prior, the probability of any benefit is "
             "{{pr_any_benefit}} but an MCID-sized benefit only {{pr_mcid_benefit}}.";
    case VerdictClass::Neutral:
      return " Under the skeptical prior, {{pr_rope}} of the posterior lies inside "
             "the equivalence region.";
    case VerdictClass::Negative:
      return " Under the skeptical prior, {{pr_rope}} of the posterior lies inside "
             "the equivalence region and the probability of an MCID-sized benefit "
             "is {{pr_mcid_benefit}}.";
    case VerdictClass::Inconclusive:
      return " Under the skeptical prior, the probability of any benefit is "
             "{{pr_any_benefit}}, of an MCID-sized benefit {{pr_mcid_benefit}}, "
             "and of any harm {{pr_any_harm}}.";
    case VerdictClass::Harmful:
      return " Under the skeptical prior, the probability of any harm is "
             "{{pr_any_harm}} and of severe harm {{pr_severe_harm}}.";
  }
  return "";
}

std::string resolve_slots(const std::string& tmpl,
                          const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t open = tmpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tmpl, pos, std::string::npos);
      break;
    }
    out.append(tmpl, pos, open - pos);
    std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string::npos)
      throw ValidationError("narrative template: unterminated slot");
    std::string name = tmpl.substr(open + 2, close - open - 2);
    auto it = slots.find(name);
    if (it == slots.end())
      throw ValidationError("narrative template: no value for slot '" + name + "'");
    out += it->second;
    pos = close + 2;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string narrative_for(const AnalysisRecord& rec) {
  const EffectScale scale = rec.estimate.scale;
  std::map<std::string, std::string> slots{
      {"estimate", estimate_phrase(rec.estimate)},
      {"mcid_benefit", fmt_val(scale, rec.thresholds.mcid_benefit)},
      {"mcid_harm", fmt_val(scale, rec.thresholds.mcid_harm)},
      {"rope_lower", fmt_val(scale, rec.thresholds.rope.lower)},
      {"rope_upper", fmt_val(scale, rec.thresholds.rope.upper)},
  };
  std::string tmpl = base_template(rec.frequentist.cls);
  if (!rec.posteriors.empty()) {
    const PosteriorSummary& ref = reference_posterior(rec.posteriors);
    slots["pr_any_benefit"] = fmt_pct(ref.pr_any_benefit);
    slots["pr_mcid_benefit"] = fmt_pct(ref.pr_mcid_benefit);
    slots["pr_rope"] = fmt_pct(ref.pr_rope);
    slots["pr_any_harm"] = fmt_pct(ref.pr_any_harm);
    slots["pr_severe_harm"] = fmt_pct(ref.pr_severe_harm);
    if (ref.arr) slots["arr"] = fmt_pct(*ref.arr);
    tmpl += bayes_template(rec.frequentist.cls);
  }
  return resolve_slots(tmpl, slots);
}

std::string render_report(const AnalysisRecord& rec, ReportFormat format) {
  if (format == ReportFormat::Json) return record_to_json(rec).dump(2) + "\n";

  const EffectScale scale = rec.estimate.scale;
  std::string md;
  md += "## " + (rec.trial.name.empty() ? rec.trial.id : rec.trial.name) + " (" +
        rec.trial.id + ")\n\n";
  if (!rec.trial.endpoint.empty()) md += "- Endpoint: " + rec.trial.endpoint + "\n";
  md += "- Estimate: " + estimate_phrase(rec.estimate) + "\n";
  md += "- Thresholds: MCID benefit " + fmt_val(scale, rec.thresholds.mcid_benefit) +
        ", MCID harm " + fmt_val(scale, rec.thresholds.mcid_harm) + "; ROPE " +
        fmt_val(scale, rec.thresholds.rope.lower) + " to " +
        fmt_val(scale, rec.thresholds.rope.upper);
  if (rec.thresholds.ni_margin)
    md += "; NI margin " + fmt_val(scale, *rec.thresholds.ni_margin);
  md += "\n";
  md += std::string("- Verdict (frequentist): **") + verdict_label(rec.frequentist.cls) +
        "**: " + join(rec.frequentist.rationale, "; ") + "\n";
  if (rec.cet)
    md += std::string("- Verdict (equivalence track): **") + verdict_label(rec.cet->cls) +
          "**: " + join(rec.cet->rationale, "; ") + "\n";
  if (rec.noninferiority)
    md += std::string("- Non-inferiority: ") + noninferiority_key(rec.noninferiority->call) +
          ": " + join(rec.noninferiority->rationale, "; ") + "\n";
  if (rec.bayesian)
    md += std::string("- Verdict (Bayesian): **") + verdict_label(rec.bayesian->cls) +
          "**: " + join(rec.bayesian->rationale, "; ") + "\n";
  md += "\n" + rec.narrative + "\n";

  if (!rec.posteriors.empty()) {
    md += "\n### Bayesian reanalysis\n\n";
    md += "| Prior | Prior mean (sd) | Median (95% CrI) | P(benefit) | P(MCID benefit) "
          "| P(ROPE) | P(harm) | P(severe harm) | ARR |\n";
    md += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& s : rec.posteriors) {
      md += std::string("| ") + prior_key(s.prior.label) + " | " +
            fmt("%.3f", s.prior.mean) + " (" + fmt("%.3f", s.prior.sd) + ") | " +
            fmt_val(scale, s.median) + " (" + fmt_val(scale, s.cri95[0]) + " to " +
            fmt_val(scale, s.cri95[1]) + ") | " + fmt_pct(s.pr_any_benefit) + " | " +
            fmt_pct(s.pr_mcid_benefit) + " | " + fmt_pct(s.pr_rope) + " | " +
            fmt_pct(s.pr_any_harm) + " | " + fmt_pct(s.pr_severe_harm) + " | " +
            (s.arr ? fmt_pct(*s.arr) : std::string("n/a")) + " |\n";
    }
    if (rec.sensitivity) {
      md += "\nPrior sensitivity: I^2 = " + fmt("%.2f", rec.sensitivity->i2) +
            " (Q = " + fmt("%.2f", rec.sensitivity->q) + "); " +
            (rec.sensitivity->robust
                 ? "the conclusion is robust to the choice of prior.\n"
                 : "the conclusion is sensitive to the choice of prior; the data "
                   "cannot overrule prior opinion.\n");
    }
  }

  if (rec.retrodesign) {
    const auto& r = *rec.retrodesign;
    md += "\n### Design diagnostics\n\n";
    md += "- Power for an effect of this size: " + fmt_pct(r.power) + " (closed form " +
          fmt_pct(r.closed.power) + ")\n";
    md += "- Type S risk (significant result with the wrong sign): " + fmt_pct(r.type_s) +
          " (closed form " + fmt_pct(r.closed.type_s) + ")\n";
    md += "- Exaggeration of significant estimates: " + fmt("%.2f", r.exaggeration) +
          "x (closed form " + fmt("%.2f", r.closed.exaggeration) + "x)\n";
  }
  return md;
}

std::string render_batch(const std::vector<AnalysisRecord>& recs, ReportFormat format) {
  if (format == ReportFormat::Json) return records_to_document(recs).dump(2) + "\n";
  std::string md = "# Trial verdict report\n";
  for (const auto& rec : recs) {
    md += "\n";
    md += render_report(rec, ReportFormat::Markdown);
  }
  return md;
}

}  // namespace rctv

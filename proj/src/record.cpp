#include "rctv/record.hpp"

#include <string>

#include "rctv/error.hpp"

namespace rctv {

namespace {

using nlohmann::ordered_json;

ordered_json verdict_to_json(const Verdict& v) {
  return ordered_json{{"class", verdict_key(v.cls)},
                      {"track", track_key(v.track)},
                      {"rationale", v.rationale}};
}

Verdict verdict_from_json(const ordered_json& j) {
  Verdict v;
  auto cls = parse_verdict(j.at("class").get<std::string>());
  if (!cls) throw ValidationError("record: unknown verdict class '" +
                                  j.at("class").get<std::string>() + "'");
  v.cls = *cls;
  auto track = parse_track(j.at("track").get<std::string>());
  if (!track) throw ValidationError("record: unknown analysis track '" +
                                    j.at("track").get<std::string>() + "'");
  v.track = *track;
  v.rationale = j.at("rationale").get<std::vector<std::string>>();
  return v;
}

ordered_json posterior_to_json(const PosteriorSummary& s) {
  ordered_json j{
      {"prior",
       {{"label", prior_key(s.prior.label)}, {"mean", s.prior.mean}, {"sd", s.prior.sd}}},
      {"mean", s.mean},
      {"sd", s.sd},
      {"median", s.median},
      {"cri95", {s.cri95[0], s.cri95[1]}},
      {"pr_any_benefit", s.pr_any_benefit},
      {"pr_mcid_benefit", s.pr_mcid_benefit},
      {"pr_rope", s.pr_rope},
      {"pr_any_harm", s.pr_any_harm},
      {"pr_severe_harm", s.pr_severe_harm},
  };
  if (s.arr) j["arr"] = *s.arr;
  if (!s.warnings.empty()) j["warnings"] = s.warnings;
  return j;
}

PosteriorSummary posterior_from_json(const ordered_json& j) {
  PosteriorSummary s;
  const auto& p = j.at("prior");
  auto label = parse_prior_label(p.at("label").get<std::string>());
  if (!label) throw ValidationError("record: unknown prior label '" +
                                    p.at("label").get<std::string>() + "'");
  s.prior.label = *label;
  s.prior.mean = p.at("mean").get<double>();
  s.prior.sd = p.at("sd").get<double>();
  s.mean = j.at("mean").get<double>();
  s.sd = j.at("sd").get<double>();
  s.median = j.at("median").get<double>();
  s.cri95 = {j.at("cri95").at(0).get<double>(), j.at("cri95").at(1).get<double>()};
  s.pr_any_benefit = j.at("pr_any_benefit").get<double>();
  s.pr_mcid_benefit = j.at("pr_mcid_benefit").get<double>();
  s.pr_rope = j.at("pr_rope").get<double>();
  s.pr_any_harm = j.at("pr_any_harm").get<double>();
  s.pr_severe_harm = j.at("pr_severe_harm").get<double>();
  if (j.contains("arr")) s.arr = j["arr"].get<double>();
  if (j.contains("warnings")) s.warnings = j["warnings"].get<std::vector<std::string>>();
  return s;
}

ordered_json retro_to_json_fields(const RetrodesignResult& r) {
  return ordered_json{
      {"power", r.power},
      {"type_s", r.type_s},
      {"exaggeration", r.exaggeration},
      {"power_se", r.power_se},
      {"type_s_se", r.type_s_se},
      {"exaggeration_se", r.exaggeration_se},
      {"closed_form",
       {{"power", r.closed.power},
        {"type_s", r.closed.type_s},
        {"exaggeration", r.closed.exaggeration}}},
      {"n_sims", r.n_sims},
      {"n_significant", r.n_significant},
      {"seed", r.seed},
  };
}

RetrodesignResult retro_from_json(const ordered_json& j) {
  RetrodesignResult r;
  r.power = j.at("power").get<double>();
  r.type_s = j.at("type_s").get<double>();
  r.exaggeration = j.at("exaggeration").get<double>();
  r.power_se = j.at("power_se").get<double>();
  r.type_s_se = j.at("type_s_se").get<double>();
  r.exaggeration_se = j.at("exaggeration_se").get<double>();
  const auto& c = j.at("closed_form");
  r.closed.power = c.at("power").get<double>();
  r.closed.type_s = c.at("type_s").get<double>();
  r.closed.exaggeration = c.at("exaggeration").get<double>();
  r.n_sims = j.at("n_sims").get<std::uint64_t>();
  r.n_significant = j.at("n_significant").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

}  // namespace

ordered_json record_to_json(const AnalysisRecord& rec) {
  ordered_json j;
  j["trial"] = {{"id", rec.trial.id}, {"name", rec.trial.name}, {"endpoint", rec.trial.endpoint}};
  ordered_json est{
      {"scale", scale_name(rec.estimate.scale)},
      {"point", rec.estimate.point},
      {"ci_lower", rec.estimate.ci_lower},
      {"ci_upper", rec.estimate.ci_upper},
      {"ci_level", rec.estimate.ci_level},
      {"analysis_mean", rec.estimate.log_mean},
      {"analysis_se", rec.estimate.log_se},
  };
  if (!rec.estimate.warnings.empty()) est["warnings"] = rec.estimate.warnings;
  j["estimate"] = est;

  ordered_json th{
      {"direction", direction_name(rec.thresholds.direction)},
      {"mcid_benefit", rec.thresholds.mcid_benefit},
      {"mcid_harm", rec.thresholds.mcid_harm},
      {"rope_lower", rec.thresholds.rope.lower},
      {"rope_upper", rec.thresholds.rope.upper},
  };
  if (rec.thresholds.ni_margin) th["ni_margin"] = *rec.thresholds.ni_margin;
  j["thresholds"] = th;

  j["frequentist"] = verdict_to_json(rec.frequentist);
  if (rec.cet) j["cet"] = verdict_to_json(*rec.cet);
  if (rec.noninferiority)
    j["noninferiority"] = {{"call", noninferiority_key(rec.noninferiority->call)},
                           {"rationale", rec.noninferiority->rationale}};
  if (!rec.posteriors.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : rec.posteriors) arr.push_back(posterior_to_json(s));
    j["posteriors"] = arr;
  }
  if (rec.bayesian) j["bayesian"] = verdict_to_json(*rec.bayesian);
  if (rec.sensitivity)
    j["sensitivity"] = {{"q", rec.sensitivity->q},
                        {"i2", rec.sensitivity->i2},
                        {"robust", rec.sensitivity->robust}};
  if (rec.retrodesign) j["retrodesign"] = retro_to_json_fields(*rec.retrodesign);
  if (rec.cer) j["cer"] = *rec.cer;
  j["narrative"] = rec.narrative;
  return j;
}

AnalysisRecord record_from_json(const ordered_json& j) {
  try {
    AnalysisRecord rec;
    const auto& t = j.at("trial");
    rec.trial.id = t.at("id").get<std::string>();
    rec.trial.name = t.at("name").get<std::string>();
    rec.trial.endpoint = t.at("endpoint").get<std::string>();

    const auto& e = j.at("estimate");
    auto scale = parse_scale(e.at("scale").get<std::string>());
    if (!scale) throw ValidationError("record: unknown scale '" +
                                      e.at("scale").get<std::string>() + "'");
    rec.estimate = EffectEstimate::from_ci(*scale, e.at("point").get<double>(),
                                           e.at("ci_lower").get<double>(),
                                           e.at("ci_upper").get<double>(),
                                           e.at("ci_level").get<double>());
    // Keep the stored likelihood rather than the re-derived one so the
    // round trip is exact even for records produced by other versions.
    rec.estimate.log_mean = e.at("analysis_mean").get<double>();
    rec.estimate.log_se = e.at("analysis_se").get<double>();
    rec.estimate.warnings.clear();
    if (e.contains("warnings"))
      rec.estimate.warnings = e["warnings"].get<std::vector<std::string>>();

    const auto& th = j.at("thresholds");
    auto dir = parse_direction(th.at("direction").get<std::string>());
    if (!dir) throw ValidationError("record: unknown direction '" +
                                    th.at("direction").get<std::string>() + "'");
    rec.thresholds.direction = *dir;
    rec.thresholds.mcid_benefit = th.at("mcid_benefit").get<double>();
    rec.thresholds.mcid_harm = th.at("mcid_harm").get<double>();
    rec.thresholds.rope.lower = th.at("rope_lower").get<double>();
    rec.thresholds.rope.upper = th.at("rope_upper").get<double>();
    if (th.contains("ni_margin")) rec.thresholds.ni_margin = th["ni_margin"].get<double>();

    rec.frequentist = verdict_from_json(j.at("frequentist"));
    if (j.contains("cet")) rec.cet = verdict_from_json(j["cet"]);
    if (j.contains("noninferiority")) {
      NonInferiorityResult ni;
      std::string call = j["noninferiority"].at("call").get<std::string>();
      if (call == "non_inferior") ni.call = NonInferiorityCall::NonInferior;
      else if (call == "inferior") ni.call = NonInferiorityCall::Inferior;
      else if (call == "inconclusive") ni.call = NonInferiorityCall::Inconclusive;
      else throw ValidationError("record: unknown noninferiority call '" + call + "'");
      ni.rationale = j["noninferiority"].at("rationale").get<std::vector<std::string>>();
      rec.noninferiority = ni;
    }
    if (j.contains("posteriors"))
      for (const auto& p : j["posteriors"]) rec.posteriors.push_back(posterior_from_json(p));
    if (j.contains("bayesian")) rec.bayesian = verdict_from_json(j["bayesian"]);
    if (j.contains("sensitivity")) {
      SensitivityResult s;
      s.q = j["sensitivity"].at("q").get<double>();
      s.i2 = j["sensitivity"].at("i2").get<double>();
      s.robust = j["sensitivity"].at("robust").get<bool>();
      rec.sensitivity = s;
    }
    if (j.contains("retrodesign")) rec.retrodesign = retro_from_json(j["retrodesign"]);
    if (j.contains("cer")) rec.cer = j["cer"].get<double>();
    rec.narrative = j.at("narrative").get<std::string>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("record: ") + e.what());
  }
}

ordered_json records_to_document(const std::vector<AnalysisRecord>& recs) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  ordered_json arr = ordered_json::array();
  for (const auto& r : recs) arr.push_back(record_to_json(r));
  doc["records"] = arr;
  return doc;
}

std::vector<AnalysisRecord> records_from_document(const ordered_json& doc) {
  try {
    std::string version = doc.at("schema_version").get<std::string>();
    if (version != kSchemaVersion)
      throw ValidationError("record document: unsupported schema_version '" + version + "'");
    std::vector<AnalysisRecord> out;
    for (const auto& r : doc.at("records")) out.push_back(record_from_json(r));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("record document: ") + e.what());
  }
}

ordered_json retrodesign_to_json(const RetrodesignResult& r) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["retrodesign"] = retro_to_json_fields(r);
  return doc;
}

ordered_json curse_chain_to_json(const CurseChainReport& r) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["winners_curse_chain"] = {
      {"true_effect", r.true_effect},
      {"exploratory_se", r.exploratory_se},
      {"alpha", r.alpha},
      {"target_power", r.target_power},
      {"n_sims", r.n_sims},
      {"n_significant", r.n_significant},
      {"seed", r.seed},
      {"exploratory_power", r.exploratory_power},
      {"mean_inflation", r.mean_inflation},
      {"median_inflation", r.median_inflation},
      {"mean_true_power", r.mean_true_power},
      {"median_true_power", r.median_true_power},
      {"p10_true_power", r.p10_true_power},
      {"p90_true_power", r.p90_true_power},
      {"median_power_shortfall", r.median_power_shortfall},
      {"median_n_underestimate", r.median_n_underestimate},
      {"fraction_reaching_target", r.fraction_reaching_target},
  };
  return doc;
}

}  // namespace rctv

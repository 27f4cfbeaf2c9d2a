#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rctv/classify.hpp"
#include "rctv/effect.hpp"
#include "rctv/posterior.hpp"
#include "rctv/retrodesign.hpp"
#include "rctv/sensitivity.hpp"
#include "rctv/thresholds.hpp"
#include "rctv/verdict.hpp"

// The complete result of analysing one trial, and its JSON form. The JSON
// serialization is lossless and key-ordered, so serialize -> parse ->
// serialize reproduces the original document byte for byte.

namespace rctv {

inline constexpr const char* kSchemaVersion = "1.0";

struct TrialMeta {
  std::string id;
  std::string name;
  std::string endpoint;
};

struct AnalysisRecord {
  TrialMeta trial;
  EffectEstimate estimate;
  ThresholdSet thresholds;
  Verdict frequentist;
  std::optional<Verdict> cet;
  std::optional<NonInferiorityResult> noninferiority;
  // Bayesian reanalysis block; empty posteriors means the track was not run.
  std::vector<PosteriorSummary> posteriors;
  std::optional<Verdict> bayesian;
  std::optional<SensitivityResult> sensitivity;
  std::optional<RetrodesignResult> retrodesign;
  std::optional<double> cer;  // control event rate used for ARR, if any
  // Narrative paragraph rendered from the verdict template and this record's
  // own numbers.
  std::string narrative;
};

nlohmann::ordered_json record_to_json(const AnalysisRecord& rec);
AnalysisRecord record_from_json(const nlohmann::ordered_json& j);

// Document wrapper for a batch: {"schema_version": ..., "records": [...]}.
nlohmann::ordered_json records_to_document(const std::vector<AnalysisRecord>& recs);
std::vector<AnalysisRecord> records_from_document(const nlohmann::ordered_json& doc);

// Simulation results as standalone JSON documents.
nlohmann::ordered_json retrodesign_to_json(const RetrodesignResult& r);
nlohmann::ordered_json curse_chain_to_json(const CurseChainReport& r);

}  // namespace rctv

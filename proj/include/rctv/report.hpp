#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rctv/record.hpp"

// Report rendering. The Markdown form is built from fixed per-verdict
// narrative templates whose slots are filled from the record itself; a slot
// with no value is an error, so a report can never silently show a template
// placeholder. The JSON form is the lossless record serialization.

namespace rctv {

enum class ReportFormat : std::uint8_t { Markdown, Json };

// The narrative paragraph for one record (template selection + slot filling).
std::string narrative_for(const AnalysisRecord& rec);

// Full single-record report in the requested format.
std::string render_report(const AnalysisRecord& rec, ReportFormat format);

// Multi-record document: concatenated per-record sections (Markdown) or the
// schema-versioned batch document (JSON).
std::string render_batch(const std::vector<AnalysisRecord>& recs, ReportFormat format);

}  // namespace rctv

#pragma once

#include <string>
#include <vector>

#include "rctv/config.hpp"
#include "rctv/record.hpp"

// Hand-rolled SVG 1.1 plots. Output is deterministic: identical inputs give
// byte-identical markup (fixed-precision coordinates, no timestamps, no ids
// derived from addresses or clocks).

namespace rctv {

// Forest plot: one row per record (point marker + CI whiskers + verdict
// label), a solid reference line at the null and dashed lines at the MCID
// bounds when they fall inside the plotted range. All records must share one
// effect scale; the x axis is linear in the analysis scale. Axis bounds are
// the min/max of the plotted CIs padded by 5% of the span on each side.
std::string forest_svg(const std::vector<AnalysisRecord>& recs,
                       const PlotOptions& opt = {});

// Posterior fingerprint: grouped bars per prior showing Pr(any benefit),
// Pr(MCID benefit), Pr(ROPE) and Pr(any harm) for one record's grid.
std::string fingerprint_svg(const AnalysisRecord& rec, const PlotOptions& opt = {});

}  // namespace rctv

#pragma once

#include <vector>

#include "rctv/error.hpp"
#include "rctv/posterior.hpp"

// Prior-sensitivity diagnostic: treat the per-prior posteriors as if they
// were study results in a fixed-effect meta-analysis and compute Cochran's Q
// and I^2. High I^2 means the priors still disagree after seeing the data,
// i.e. the data were too weak to overwhelm prior opinion.

namespace rctv {

struct SensitivityResult {
  double q = 0.0;
  double i2 = 0.0;      // in [0, 1]
  bool robust = false;  // conclusion insensitive to prior choice
};

inline constexpr double kRobustI2Max = 0.20;

inline SensitivityResult prior_sensitivity(const std::vector<NormalPosterior>& posteriors) {
  if (posteriors.size() < 2)
    throw ValidationError("prior_sensitivity: need at least two posteriors");
  double sw = 0.0, swm = 0.0;
  for (const auto& p : posteriors) {
    if (!(p.sd > 0.0)) throw ValidationError("prior_sensitivity: posterior sd must be positive");
    double w = 1.0 / (p.sd * p.sd);
    sw += w;
    swm += w * p.mean;
  }
  double pooled = swm / sw;
  double q = 0.0;
  for (const auto& p : posteriors) {
    double w = 1.0 / (p.sd * p.sd);
    double d = p.mean - pooled;
    q += w * d * d;
  }
  SensitivityResult r;
  r.q = q;
  double df = static_cast<double>(posteriors.size()) - 1.0;
  r.i2 = (q > df && q > 0.0) ? (q - df) / q : 0.0;
  r.robust = r.i2 < kRobustI2Max;
  return r;
}

inline SensitivityResult prior_sensitivity(const std::vector<PosteriorSummary>& grid) {
  std::vector<NormalPosterior> ps;
  ps.reserve(grid.size());
  for (const auto& s : grid) ps.push_back({s.mean, s.sd});
  return prior_sensitivity(ps);
}

}  // namespace rctv

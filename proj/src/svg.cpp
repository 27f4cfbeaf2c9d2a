#include "rctv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rctv/error.hpp"

namespace rctv {

namespace {

// Fixed-precision coordinate formatting keeps the markup byte-stable.
std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string pct1(double p) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * p);
  return buf;
}

std::string esc(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

const char* verdict_color(VerdictClass v) {
  switch (v) {
    case VerdictClass::Positive: return "#1a7f37";
    case VerdictClass::ImprecisePlus: return "#2da44e";
    case VerdictClass::Neutral: return "#6e7781";
    case VerdictClass::Inconclusive: return "#bf8700";
    case VerdictClass::Negative: return "#0969da";
    case VerdictClass::Harmful: return "#cf222e";
  }
  return "#000000";
}

struct Svg {
  std::string body;
  void line(double x1, double y1, double x2, double y2, const std::string& attrs) {
    body += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
            "\" y2=\"" + num(y2) + "\" " + attrs + "/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& attrs) {
    body += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
            "\" height=\"" + num(h) + "\" " + attrs + "/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& attrs) {
    body += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
            "\" " + attrs + "/>\n";
  }
  void text(double x, double y, const std::string& content, const std::string& attrs) {
    body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" " + attrs + ">" +
            esc(content) + "</text>\n";
  }
  std::string finish(double width, double height) const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) +
           " " + num(height) + "\" font-family=\"sans-serif\">\n" + body + "</svg>\n";
  }
};

constexpr const char* kTextAttrs = "font-size=\"12\" fill=\"#1f2328\"";

}  // namespace

std::string forest_svg(const std::vector<AnalysisRecord>& recs, const PlotOptions& opt) {
  if (recs.empty()) throw ValidationError("forest_svg: no records to plot");
  const EffectScale scale = recs.front().estimate.scale;
  for (const auto& r : recs)
    if (r.estimate.scale != scale)
      throw ValidationError("forest_svg: records mix effect scales; plot them separately");

  // Axis bounds: hull of the plotted CIs on the analysis scale, padded 5%.
  double lo = to_analysis(scale, recs.front().estimate.ci_lower);
  double hi = lo;
  for (const auto& r : recs) {
    lo = std::min(lo, to_analysis(scale, r.estimate.ci_lower));
    hi = std::max(hi, to_analysis(scale, r.estimate.ci_upper));
  }
  double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double ml = 190.0, mr = 130.0, mt = 46.0, mb = 34.0;
  const double width = opt.forest_width;
  const double row_h = opt.forest_row_height;
  const double plot_w = width - ml - mr;
  const double n = static_cast<double>(recs.size());
  const double height = mt + n * row_h + mb;
  const double y_bottom = mt + n * row_h;
  auto x_of = [&](double v) { return ml + (v - lo) / (hi - lo) * plot_w; };
  auto in_range = [&](double v) { return v > lo && v < hi; };

  Svg svg;
  svg.rect(0, 0, width, height, "fill=\"#ffffff\"");

  // Axis ticks. Ratio scales get fixed "nice" ratios, additive scales five
  // evenly spaced values; both are pure functions of the bounds.
  svg.line(ml, y_bottom, ml + plot_w, y_bottom, "stroke=\"#6e7781\" stroke-width=\"1\"");
  if (is_ratio_scale(scale)) {
    const double ticks[] = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
    for (double t : ticks) {
      double v = std::log(t);
      if (!in_range(v)) continue;
      svg.line(x_of(v), y_bottom, x_of(v), y_bottom + 4, "stroke=\"#6e7781\"");
      char label[24];
      std::snprintf(label, sizeof label, "%g", t);
      svg.text(x_of(v), y_bottom + 16, label,
               std::string(kTextAttrs) + " text-anchor=\"middle\"");
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      double v = lo + (hi - lo) * i / 4.0;
      svg.line(x_of(v), y_bottom, x_of(v), y_bottom + 4, "stroke=\"#6e7781\"");
      char label[24];
      std::snprintf(label, sizeof label, "%.3g", v);
      svg.text(x_of(v), y_bottom + 16, label,
               std::string(kTextAttrs) + " text-anchor=\"middle\"");
    }
  }

  // Reference lines: solid null, dashed MCID bounds (first record's
  // thresholds), drawn only when inside the plotted range.
  if (in_range(0.0))
    svg.line(x_of(0.0), mt - 6, x_of(0.0), y_bottom,
             "stroke=\"#1f2328\" stroke-width=\"1\" class=\"ref-null\"");
  const ThresholdSet& t0 = recs.front().thresholds;
  for (double m : {to_analysis(scale, t0.mcid_benefit), to_analysis(scale, t0.mcid_harm)}) {
    if (!in_range(m)) continue;
    svg.line(x_of(m), mt - 6, x_of(m), y_bottom,
             "stroke=\"#6e7781\" stroke-width=\"1\" stroke-dasharray=\"4 3\" "
             "class=\"ref-mcid\"");
  }

  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& rec = recs[i];
    double y = mt + (static_cast<double>(i) + 0.5) * row_h;
    double cl = to_analysis(scale, rec.estimate.ci_lower);
    double cu = to_analysis(scale, rec.estimate.ci_upper);
    double cp = to_analysis(scale, rec.estimate.point);
    const char* color = verdict_color(rec.frequentist.cls);

    svg.text(8, y + 4, rec.trial.name.empty() ? rec.trial.id : rec.trial.name, kTextAttrs);
    svg.line(x_of(cl), y, x_of(cu), y,
             std::string("stroke=\"") + color + "\" stroke-width=\"2\" class=\"ci\"");
    svg.line(x_of(cl), y - 4, x_of(cl), y + 4, std::string("stroke=\"") + color + "\"");
    svg.line(x_of(cu), y - 4, x_of(cu), y + 4, std::string("stroke=\"") + color + "\"");
    svg.circle(x_of(cp), y, 4.0, std::string("fill=\"") + color + "\" class=\"point\"");
    svg.text(width - mr + 10, y + 4, verdict_label(rec.frequentist.cls),
             std::string("font-size=\"12\" fill=\"") + color + "\"");
  }
  return svg.finish(width, height);
}

std::string fingerprint_svg(const AnalysisRecord& rec, const PlotOptions& opt) {
  (void)opt;
  if (rec.posteriors.empty())
    throw ValidationError("fingerprint_svg: record has no posterior grid");

  struct Bar {
    const char* cls;
    const char* color;
    const char* label;
    double PosteriorSummary::* value;
  };
  const Bar bars[] = {
      {"bar benefit", "#2da44e", "P(benefit)", &PosteriorSummary::pr_any_benefit},
      {"bar mcid", "#1a7f37", "P(MCID benefit)", &PosteriorSummary::pr_mcid_benefit},
      {"bar rope", "#8250df", "P(ROPE)", &PosteriorSummary::pr_rope},
      {"bar harm", "#cf222e", "P(harm)", &PosteriorSummary::pr_any_harm},
  };

  const double bar_w = 26.0, bar_gap = 6.0, group_gap = 34.0;
  const double chart_h = 180.0, ml = 46.0, mt = 52.0, mb = 40.0;
  const double group_w = 4 * bar_w + 3 * bar_gap;
  const double n_groups = static_cast<double>(rec.posteriors.size());
  const double width = ml + n_groups * (group_w + group_gap) + 10.0;
  const double height = mt + chart_h + mb;
  const double base_y = mt + chart_h;

  Svg svg;
  svg.rect(0, 0, width, height, "fill=\"#ffffff\"");
  svg.text(8, 18, "Posterior fingerprint: " +
           (rec.trial.name.empty() ? rec.trial.id : rec.trial.name),
           "font-size=\"13\" fill=\"#1f2328\" font-weight=\"bold\"");

  // Legend swatches across the top.
  double lx = 8.0;
  for (const auto& b : bars) {
    svg.rect(lx, 26, 10, 10, std::string("fill=\"") + b.color + "\"");
    svg.text(lx + 14, 35, b.label, kTextAttrs);
    lx += 14 + 7.2 * static_cast<double>(std::string(b.label).size()) + 16;
  }

  // Percent gridlines.
  for (int g = 0; g <= 4; ++g) {
    double frac = static_cast<double>(g) / 4.0;
    double y = base_y - frac * chart_h;
    svg.line(ml, y, width - 10, y, "stroke=\"#d0d7de\" stroke-width=\"0.5\"");
    char label[8];
    std::snprintf(label, sizeof label, "%d%%", g * 25);
    svg.text(ml - 6, y + 4, label, std::string(kTextAttrs) + " text-anchor=\"end\"");
  }

  for (std::size_t gi = 0; gi < rec.posteriors.size(); ++gi) {
    const auto& s = rec.posteriors[gi];
    double gx = ml + static_cast<double>(gi) * (group_w + group_gap) + group_gap / 2.0;
    for (std::size_t bi = 0; bi < 4; ++bi) {
      const Bar& b = bars[bi];
      double v = s.*(b.value);
      double h = v * chart_h;
      double x = gx + static_cast<double>(bi) * (bar_w + bar_gap);
      svg.rect(x, base_y - h, bar_w, h,
               std::string("fill=\"") + b.color + "\" class=\"" + b.cls + "\"");
      svg.text(x + bar_w / 2.0, base_y - h - 4, pct1(v),
               "font-size=\"10\" fill=\"#1f2328\" text-anchor=\"middle\"");
    }
    svg.text(gx + group_w / 2.0, base_y + 16, prior_key(s.prior.label),
             std::string(kTextAttrs) + " text-anchor=\"middle\"");
  }
  svg.line(ml, base_y, width - 10, base_y, "stroke=\"#6e7781\" stroke-width=\"1\"");
  return svg.finish(width, height);
}

}  // namespace rctv

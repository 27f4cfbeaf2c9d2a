#pragma once

#include <algorithm>
#include <cmath>

// Independent numerical oracles used only by the tests. Probabilities and
// truncated-normal expectations come from plain Simpson integration of the
// normal density: no code shared with the library's erfc/quantile path, so
// agreement is meaningful.

namespace testoracle {

inline double density(double x, double m, double s) {
  double z = (x - m) / s;
  return std::exp(-0.5 * z * z) / (s * 2.50662827463100050242);
}

// Pr(lo < X < hi) for X ~ N(m, s^2). Integration clipped to +/-14 sd, which
// truncates less than 1e-40 of mass.
inline double normal_prob(double lo, double hi, double m, double s, int panels = 40000) {
  double a = std::max(lo, m - 14.0 * s);
  double b = std::min(hi, m + 14.0 * s);
  if (!(a < b)) return 0.0;
  double h = (b - a) / panels;
  double sum = density(a, m, s) + density(b, m, s);
  for (int i = 1; i < panels; ++i)
    sum += density(a + h * i, m, s) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

inline double normal_cdf_oracle(double c, double m, double s) {
  return normal_prob(m - 15.0 * s, c, m, s);
}

// E[|X| * 1{|X| > zc}] for X ~ N(lambda, 1), by Simpson on both tails.
inline double truncated_abs_mean(double lambda, double zc, int panels = 40000) {
  auto segment = [&](double a, double b) {
    if (!(a < b)) return 0.0;
    double h = (b - a) / panels;
    auto f = [&](double x) { return std::abs(x) * density(x, lambda, 1.0); };
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
  };
  double left = segment(lambda - 16.0, -zc);
  double right = segment(zc, lambda + 16.0);
  return left + right;
}

}  // namespace testoracle

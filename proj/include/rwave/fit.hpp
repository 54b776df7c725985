// Least-squares slope fits and sup-ratio constants.
//
// The decay harness certifies bounds empirically: a fitted log-log slope
// must land within tolerance of the predicted exponent, and the empirical
// constant sup |value| / bound must stay stable when the sample is refined.
// Both primitives live here, independent of where the samples came from.
#pragma once

#include <cstddef>
#include <vector>

namespace rwave {

// Ordinary least squares y ~ slope x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;  // rms of y - (slope x + intercept)
  std::size_t count = 0;      // samples used
};

// Requires x.size() == y.size() >= 2 and non-degenerate x (var > 0).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// sup over i of num[i] / den[i].  Pairs with den <= 0 count only when the
// numerator is nonzero (then the ratio is +inf: the bound claims nothing,
// the value disagrees); NaN numerators are skipped -- failed sweep points
// are accounted for by the caller, not hidden in the constant.
double sup_ratio(const std::vector<double>& num, const std::vector<double>& den);

// Refinement-stability verdict for a fitted constant.
struct StabilityReport {
  double c = 0.0;        // sup ratio on the base sample
  double c_refined = 0.0;
  double growth = 0.0;   // relative growth from base to refined
  bool stable = false;   // both finite and growth < tol
};

// growth = (c_refined - c) / c; both zero counts as stable (zero data),
// zero base with nonzero refined does not.
StabilityReport stability(double c_base, double c_refined, double tol);

}  // namespace rwave

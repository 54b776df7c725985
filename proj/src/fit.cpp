#include "rwave/fit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwave {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit_line: need >= 2 samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: degenerate x");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss += e * e;
  }
  f.residual_rms = std::sqrt(ss / double(n));
  f.count = n;
  return f;
}

double sup_ratio(const std::vector<double>& num,
                 const std::vector<double>& den) {
  if (num.size() != den.size()) throw std::invalid_argument("sup_ratio: size");
  double sup = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double a = std::abs(num[i]);
    if (std::isnan(a)) continue;
    if (!(den[i] > 0.0)) {
      if (a > 0.0) return std::numeric_limits<double>::infinity();
      continue;  // 0 / 0: vacuous point
    }
    const double q = a / den[i];
    if (q > sup) sup = q;
  }
  return sup;
}

StabilityReport stability(double c_base, double c_refined, double tol) {
  StabilityReport s;
  s.c = c_base;
  s.c_refined = c_refined;
  if (c_base == 0.0 && c_refined == 0.0) {
    s.growth = 0.0;
    s.stable = true;
    return s;
  }
  s.growth = c_base > 0.0 ? (c_refined - c_base) / c_base
                          : std::numeric_limits<double>::infinity();
  s.stable = std::isfinite(c_base) && std::isfinite(c_refined) &&
             std::isfinite(s.growth) && s.growth < tol;
  return s;
}

}  // namespace rwave

#pragma once
// Shared test oracles: Richardson-extrapolated central differences used to
// check jet and representation derivatives against plain value evaluations.

#include <functional>

namespace testutil {

using Fn1 = std::function<double(double)>;
using Fn3 = std::function<double(double, double, double)>;

// d/dx f at x, two-level Richardson on central differences: O(h^4).
inline double diff1(const Fn1& f, double x, double h) {
  auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
  return (4.0 * d(h / 2) - d(h)) / 3.0;
}

// Mixed partial d^i_lambda d^j_r d^k_t f by nested first differences.
inline double fd_partial(const Fn3& f, int i, int j, int k, double lam,
                         double r, double t, double h) {
  if (i > 0) {
    Fn1 g = [&](double x) { return fd_partial(f, i - 1, j, k, x, r, t, h); };
    return diff1(g, lam, h);
  }
  if (j > 0) {
    Fn1 g = [&](double x) { return fd_partial(f, 0, j - 1, k, lam, x, t, h); };
    return diff1(g, r, h);
  }
  if (k > 0) {
    Fn1 g = [&](double x) { return fd_partial(f, 0, 0, k - 1, lam, r, x, h); };
    return diff1(g, t, h);
  }
  return f(lam, r, t);
}

}  // namespace testutil

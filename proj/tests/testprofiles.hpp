#pragma once
// Profile builders shared by the riemann/oracle/decay tests: a smooth
// compact bump and a power-envelope pair, both with derivatives generated
// by jet arithmetic so no hand-coded derivative tables are needed.

#include <cmath>

#include "rwave/jet.hpp"
#include "rwave/profile.hpp"

namespace testprofiles {

// amp * exp(-1/((lam-a)(b-lam))) on (a, b), identically zero elsewhere.
// Below edge_cut * (b-a) from either edge the value is < 1e-140 and the
// profile reports exact zeros (reciprocal jets blow up at the edges).
inline rwave::RadialProfile bump(double a, double b, double amp,
                                 int max_order, rwave::Envelope env) {
  constexpr double edge_cut = 3e-3;
  auto fn = [a, b, amp](double lam, int order, double* out) {
    const double cut = edge_cut * (b - a);
    if (lam - a <= cut || b - lam <= cut) {
      for (int s = 0; s <= order; ++s) out[s] = 0.0;
      return;
    }
    rwave::Jet x = rwave::Jet::variable(0, lam, {order, 0, 0});
    rwave::Jet u = (x - a) * (x * (-1.0) + b);
    rwave::Jet f = (-u.reciprocal()).exp() * amp;
    for (int s = 0; s <= order; ++s) out[s] = f.deriv(s, 0, 0);
  };
  return rwave::RadialProfile(fn, max_order, env,
                              rwave::Support{a, b});
}

// c * lam^p * (1+lam)^q for lam > 0 (the power-envelope shape; singular at
// the origin when p < 0, so only evaluate at positive lam).
inline rwave::RadialProfile power(double c, double p, double q, int max_order,
                                  rwave::Envelope env) {
  auto fn = [c, p, q](double lam, int order, double* out) {
    rwave::Jet x = rwave::Jet::variable(0, lam, {order, 0, 0});
    rwave::Jet f = x.pow(p) * (x + 1.0).pow(q) * c;
    for (int s = 0; s <= order; ++s) out[s] = f.deriv(s, 0, 0);
  };
  return rwave::RadialProfile(fn, max_order, env);
}

}  // namespace testprofiles

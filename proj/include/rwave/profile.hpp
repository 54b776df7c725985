// Radial data profiles: a profile is a smooth function of lambda >= 0 known
// through its derivatives up to a fixed order, together with the envelope
// certificate (eps, k, l) it claims to satisfy and an optional compact
// support interval.  Everything downstream (integral representations,
// difference oracles, decay sweeps) consumes profiles through this type.
#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "rwave/jet.hpp"
#include "rwave/params.hpp"

namespace rwave {

// Claimed data-size certificate: the weighted sum of derivatives up to order
// l (resp. l+1) is bounded by eps * lambda^(l-m) * (1+lambda)^(m-l-k).
struct Envelope {
  double eps = 1.0;
  Rational k{0};
  int l = 1;
};

struct Support {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double lam) const { return lam >= lo && lam <= hi; }
};

class RadialProfile {
 public:
  // fn(lam, order, out) fills out[0..order] with f(lam), f'(lam), ...,
  // i.e. raw derivatives, not Taylor coefficients.
  using DerivFn = std::function<void(double lam, int order, double* out)>;

  RadialProfile() = default;  // identically zero, any order
  RadialProfile(DerivFn fn, int max_order, Envelope env,
                std::optional<Support> support = {});

  bool is_zero() const { return !fn_; }
  int max_order() const { return max_order_; }
  const Envelope& envelope() const { return env_; }
  const std::optional<Support>& support() const { return support_; }

  double value(double lam) const;
  double deriv(double lam, int s) const;
  // Fills out[0..order]; order <= max_order.
  void derivs(double lam, int order, double* out) const;

  // Lifts the profile to a jet in (lambda, r, t) at the given base point:
  // only the lambda direction carries nonzero coefficients.
  Jet lift(double lam, JetOrders orders) const;

 private:
  DerivFn fn_;
  int max_order_ = std::numeric_limits<int>::max();
  Envelope env_;
  std::optional<Support> support_;
};

}  // namespace rwave

#include "rwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwave {

RadialProfile::RadialProfile(DerivFn fn, int max_order, Envelope env,
                             std::optional<Support> support)
    : fn_(std::move(fn)), max_order_(max_order), env_(env),
      support_(support) {
  if (!fn_) throw std::invalid_argument("profile: null derivative callback");
  if (max_order_ < 1) throw std::invalid_argument("profile: max_order < 1");
  if (env_.l < 1) throw std::invalid_argument("profile: envelope needs l >= 1");
  if (env_.eps <= 0.0) throw std::invalid_argument("profile: eps <= 0");
  if (env_.k < Rational(0)) throw std::invalid_argument("profile: k < 0");
  if (support_ && !(support_->lo < support_->hi))
    throw std::invalid_argument("profile: empty support interval");
}

void RadialProfile::derivs(double lam, int order, double* out) const {
  if (order < 0) throw std::invalid_argument("profile: negative order");
  if (!fn_) {
    std::fill(out, out + order + 1, 0.0);
    return;
  }
  if (order > max_order_)
    throw std::invalid_argument("profile: derivative order exceeds max_order");
  if (support_ && !support_->contains(lam)) {
    std::fill(out, out + order + 1, 0.0);
    return;
  }
  fn_(lam, order, out);
}

double RadialProfile::value(double lam) const { return deriv(lam, 0); }

double RadialProfile::deriv(double lam, int s) const {
  std::vector<double> buf(static_cast<size_t>(s) + 1);
  derivs(lam, s, buf.data());
  return buf[static_cast<size_t>(s)];
}

Jet RadialProfile::lift(double lam, JetOrders orders) const {
  const int p = orders[0];
  std::vector<double> d(static_cast<size_t>(p) + 1);
  derivs(lam, p, d.data());
  Jet out = Jet::constant(d[0], orders);
  double fact = 1.0;
  for (int i = 1; i <= p; ++i) {
    fact *= i;
    out.coeff(i, 0, 0) = d[static_cast<size_t>(i)] / fact;
  }
  return out;
}

}  // namespace rwave

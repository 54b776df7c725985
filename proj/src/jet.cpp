#include "rwave/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace rwave {

Jet::Jet(JetOrders orders) : ord_(orders) {
  for (int o : ord_)
    if (o < 0) throw std::invalid_argument("Jet: negative order");
  s2_ = ord_[2] + 1;
  s1_ = (ord_[1] + 1) * s2_;
  c_.assign(size_t((ord_[0] + 1) * s1_), 0.0);
}

Jet Jet::constant(double c, JetOrders orders) {
  Jet j(orders);
  j.c_[0] = c;
  return j;
}

Jet Jet::variable(int var, double base, JetOrders orders) {
  Jet j(orders);
  j.c_[0] = base;
  if (orders[size_t(var)] >= 1) {
    int i = (var == 0), jj = (var == 1), k = (var == 2);
    j.c_[size_t(j.idx(i, jj, k))] = 1.0;
  }
  return j;
}

double Jet::coeff(int i, int j, int k) const {
  if (i > ord_[0] || j > ord_[1] || k > ord_[2] || i < 0 || j < 0 || k < 0)
    throw std::out_of_range("Jet::coeff");
  return c_[size_t(idx(i, j, k))];
}

double& Jet::coeff(int i, int j, int k) {
  if (i > ord_[0] || j > ord_[1] || k > ord_[2] || i < 0 || j < 0 || k < 0)
    throw std::out_of_range("Jet::coeff");
  return c_[size_t(idx(i, j, k))];
}

double Jet::deriv(int i, int j, int k) const {
  double f = 1.0;
  for (int q = 2; q <= i; ++q) f *= q;
  for (int q = 2; q <= j; ++q) f *= q;
  for (int q = 2; q <= k; ++q) f *= q;
  return coeff(i, j, k) * f;
}

JetOrders Jet::min_orders(const JetOrders& a, const JetOrders& b) {
  return {std::min(a[0], b[0]), std::min(a[1], b[1]), std::min(a[2], b[2])};
}

Jet Jet::operator+(const Jet& o) const {
  Jet out(min_orders(ord_, o.ord_));
  for (int i = 0; i <= out.ord_[0]; ++i)
    for (int j = 0; j <= out.ord_[1]; ++j)
      for (int k = 0; k <= out.ord_[2]; ++k)
        out.c_[size_t(out.idx(i, j, k))] =
            c_[size_t(idx(i, j, k))] + o.c_[size_t(o.idx(i, j, k))];
  return out;
}

Jet Jet::operator-(const Jet& o) const {
  Jet out(min_orders(ord_, o.ord_));
  for (int i = 0; i <= out.ord_[0]; ++i)
    for (int j = 0; j <= out.ord_[1]; ++j)
      for (int k = 0; k <= out.ord_[2]; ++k)
        out.c_[size_t(out.idx(i, j, k))] =
            c_[size_t(idx(i, j, k))] - o.c_[size_t(o.idx(i, j, k))];
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

Jet Jet::operator+(double s) const {
  Jet out = *this;
  out.c_[0] += s;
  return out;
}

Jet Jet::operator-(double s) const { return *this + (-s); }

Jet Jet::operator*(double s) const {
  Jet out = *this;
  for (auto& v : out.c_) v *= s;
  return out;
}

Jet Jet::operator*(const Jet& o) const {
  Jet out(min_orders(ord_, o.ord_));
  for (int i = 0; i <= out.ord_[0]; ++i)
    for (int j = 0; j <= out.ord_[1]; ++j)
      for (int k = 0; k <= out.ord_[2]; ++k) {
        double acc = 0.0;
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= j; ++q)
            for (int s = 0; s <= k; ++s)
              acc += c_[size_t(idx(p, q, s))] *
                     o.c_[size_t(o.idx(i - p, j - q, k - s))];
        out.c_[size_t(out.idx(i, j, k))] = acc;
      }
  return out;
}

Jet Jet::reciprocal() const {
  if (c_[0] == 0.0) throw std::domain_error("Jet::reciprocal: zero constant term");
  Jet out(ord_);
  const double inv0 = 1.0 / c_[0];
  for (int i = 0; i <= ord_[0]; ++i)
    for (int j = 0; j <= ord_[1]; ++j)
      for (int k = 0; k <= ord_[2]; ++k) {
        if (i == 0 && j == 0 && k == 0) {
          out.c_[0] = inv0;
          continue;
        }
        // a0*b_g + sum_{0 < d <= g} a_d b_{g-d} = 0
        double acc = 0.0;
        for (int p = 0; p <= i; ++p)
          for (int q = 0; q <= j; ++q)
            for (int s = 0; s <= k; ++s) {
              if (p == 0 && q == 0 && s == 0) continue;
              acc += c_[size_t(idx(p, q, s))] *
                     out.c_[size_t(out.idx(i - p, j - q, k - s))];
            }
        out.c_[size_t(out.idx(i, j, k))] = -inv0 * acc;
      }
  return out;
}

Jet Jet::d_lambda() const {
  if (ord_[0] < 1) throw std::domain_error("Jet::d_lambda: lambda order exhausted");
  Jet out(JetOrders{ord_[0] - 1, ord_[1], ord_[2]});
  for (int i = 0; i <= out.ord_[0]; ++i)
    for (int j = 0; j <= out.ord_[1]; ++j)
      for (int k = 0; k <= out.ord_[2]; ++k)
        out.c_[size_t(out.idx(i, j, k))] = (i + 1) * c_[size_t(idx(i + 1, j, k))];
  return out;
}

Jet Jet::d_r() const {
  if (ord_[1] < 1) throw std::domain_error("Jet::d_r: r order exhausted");
  Jet out(JetOrders{ord_[0], ord_[1] - 1, ord_[2]});
  for (int i = 0; i <= out.ord_[0]; ++i)
    for (int j = 0; j <= out.ord_[1]; ++j)
      for (int k = 0; k <= out.ord_[2]; ++k)
        out.c_[size_t(out.idx(i, j, k))] = (j + 1) * c_[size_t(idx(i, j + 1, k))];
  return out;
}

Jet Jet::d_t() const {
  if (ord_[2] < 1) throw std::domain_error("Jet::d_t: t order exhausted");
  Jet out(JetOrders{ord_[0], ord_[1], ord_[2] - 1});
  for (int i = 0; i <= out.ord_[0]; ++i)
    for (int j = 0; j <= out.ord_[1]; ++j)
      for (int k = 0; k <= out.ord_[2]; ++k)
        out.c_[size_t(out.idx(i, j, k))] = (k + 1) * c_[size_t(idx(i, j, k + 1))];
  return out;
}

Jet Jet::compose(std::span<const double> ftaylor) const {
  const int K = total_order();
  if (int(ftaylor.size()) < K + 1)
    throw std::invalid_argument("Jet::compose: need total_order()+1 coefficients");
  Jet shat = *this;
  shat.c_[0] = 0.0;  // nilpotent part
  Jet acc = Jet::constant(ftaylor[size_t(K)], ord_);
  for (int k = K - 1; k >= 0; --k) acc = acc * shat + ftaylor[size_t(k)];
  return acc;
}

Jet Jet::pow(double p) const {
  const double s0 = c_[0];
  if (s0 <= 0.0) throw std::domain_error("Jet::pow: need positive constant term");
  const int K = total_order();
  std::vector<double> f(size_t(K) + 1);
  f[0] = std::pow(s0, p);
  for (int k = 1; k <= K; ++k)
    f[size_t(k)] = f[size_t(k - 1)] * (p - (k - 1)) / (double(k) * s0);
  return compose(f);
}

Jet Jet::powi(int p) const {
  if (p < 0) return reciprocal().powi(-p);
  Jet acc = Jet::constant(1.0, ord_);
  Jet base = *this;
  int e = p;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

Jet Jet::exp() const {
  const int K = total_order();
  std::vector<double> f(size_t(K) + 1);
  f[0] = std::exp(c_[0]);
  for (int k = 1; k <= K; ++k) f[size_t(k)] = f[size_t(k - 1)] / double(k);
  return compose(f);
}

Jet Jet::poly_eval(std::span<const double> coeffs) const {
  Jet acc = Jet::constant(coeffs.empty() ? 0.0 : coeffs.back(), ord_);
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * (*this) + coeffs[i];
  return acc;
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

double z_value(double lam, double r, double t) {
  // grouped so lambda^2 survives when t == r (t*t - r*r absorbs it otherwise)
  return (lam * lam - (t - r) * (t + r)) / (2.0 * r * lam);
}

double dlambda_z_value(double lam, double r, double t) {
  return (lam * lam + (t - r) * (t + r)) / (2.0 * r * lam * lam);
}

namespace {
// Shared pieces: jets of lambda, r, t and 1/(2 r lambda).
struct Vars {
  Jet lam, r, t, inv_2rl;
  Vars(double l, double rr, double tt, JetOrders o)
      : lam(Jet::variable(0, l, o)),
        r(Jet::variable(1, rr, o)),
        t(Jet::variable(2, tt, o)),
        inv_2rl((r * lam * 2.0).reciprocal()) {}
};
}  // namespace

Jet z_jet(double lam, double r, double t, JetOrders orders) {
  Vars v(lam, r, t, orders);
  return (v.lam * v.lam - (v.t - v.r) * (v.t + v.r)) * v.inv_2rl;
}

Jet dlambda_z_jet(double lam, double r, double t, JetOrders orders) {
  // (lambda^2 + t^2 - r^2) / (2 r lambda^2)
  Vars v(lam, r, t, orders);
  return (v.lam * v.lam + (v.t - v.r) * (v.t + v.r)) *
         (v.r * v.lam * v.lam * 2.0).reciprocal();
}

Jet inv_dlambda_z_jet(double lam, double r, double t, JetOrders orders) {
  // 2 r lambda^2 / (lambda^2 + t^2 - r^2), grouped as above for t near r
  Vars v(lam, r, t, orders);
  Jet denom = v.lam * v.lam + (v.t - v.r) * (v.t + v.r);
  if (denom.value() == 0.0)
    throw std::domain_error("inv_dlambda_z_jet: lambda^2 + t^2 - r^2 == 0");
  return v.r * v.lam * v.lam * 2.0 * denom.reciprocal();
}

Jet one_plus_z_jet(double lam, double r, double t, JetOrders orders,
                   std::optional<double> r_minus_t_plus_lam) {
  Vars v(lam, r, t, orders);
  // (r - t + lambda) as a jet whose constant term is supplied exactly.
  Jet g = v.r - v.t + v.lam;
  if (r_minus_t_plus_lam) g = g - g.value() + *r_minus_t_plus_lam;
  return (v.r + v.t + v.lam) * g * v.inv_2rl;
}

Jet minus_one_minus_z_jet(double lam, double r, double t, JetOrders orders,
                          std::optional<double> t_minus_r_minus_lam) {
  Vars v(lam, r, t, orders);
  Jet e = v.t - v.r - v.lam;
  if (t_minus_r_minus_lam) e = e - e.value() + *t_minus_r_minus_lam;
  return e * (v.t + v.r + v.lam) * v.inv_2rl;
}

Jet one_minus_z_jet(double lam, double r, double t, JetOrders orders,
                    std::optional<double> t_plus_r_minus_lam,
                    std::optional<double> t_minus_r_plus_lam) {
  Vars v(lam, r, t, orders);
  Jet h = v.t + v.r - v.lam;
  if (t_plus_r_minus_lam) h = h - h.value() + *t_plus_r_minus_lam;
  Jet b = v.t - v.r + v.lam;  // cancels at lam = r - t when t < r
  if (t_minus_r_plus_lam) b = b - b.value() + *t_minus_r_plus_lam;
  return h * b * v.inv_2rl;
}

}  // namespace rwave

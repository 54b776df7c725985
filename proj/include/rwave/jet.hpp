#pragma once
// Dense truncated Taylor ("jet") arithmetic in the three variables
// (lambda, r, t), plus the jets of the substitution
//
//     z(lambda, r, t) = (lambda^2 + r^2 - t^2) / (2 r lambda)
//
// and of (d_lambda z)^(-1) that the iterated integral representations are
// built from.  A jet stores Taylor coefficients c[i][j][k] =
// (d^i_lambda d^j_r d^k_t F) / (i! j! k!) at a basepoint, truncated to a
// per-variable order box.  Binary operations truncate to the smaller box.
//
// Near the light cone the combinations 1+z and 1-z suffer catastrophic
// cancellation if formed from z directly; the factored forms
//     1+z = (r+t+lambda)(r-t+lambda) / (2 r lambda)
//    -1-z = (t-r-lambda)(t+r+lambda) / (2 r lambda)
//     1-z = (t+r-lambda)(t-r+lambda) / (2 r lambda)
// are exposed as dedicated jet builders that accept the exact endpoint
// offset (r-t+lambda, t-r-lambda, or t+r-lambda) when the caller knows it.

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace rwave {

using JetOrders = std::array<int, 3>;  // max orders in (lambda, r, t)

class Jet {
 public:
  Jet() : Jet(JetOrders{0, 0, 0}) {}
  explicit Jet(JetOrders orders);

  static Jet constant(double c, JetOrders orders);
  // var: 0 = lambda, 1 = r, 2 = t.  base + (that variable's increment).
  static Jet variable(int var, double base, JetOrders orders);

  const JetOrders& orders() const { return ord_; }
  int total_order() const { return ord_[0] + ord_[1] + ord_[2]; }

  double value() const { return c_[0]; }
  double coeff(int i, int j, int k) const;   // Taylor coefficient
  double& coeff(int i, int j, int k);        // mutable access
  double deriv(int i, int j, int k) const;   // coeff * i! j! k!

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator-() const;
  Jet operator+(double s) const;
  Jet operator-(double s) const;
  Jet operator*(double s) const;

  // Power-series reciprocal; requires value() != 0.
  Jet reciprocal() const;

  // Exact jet differentiation; the differentiated variable's order drops
  // by one (which must be available).
  Jet d_lambda() const;
  Jet d_r() const;
  Jet d_t() const;

  // f(this) for univariate f given by Taylor coefficients about value():
  // ftaylor[k] = f^(k)(value()) / k!, k = 0 .. total_order().
  Jet compose(std::span<const double> ftaylor) const;

  // (this)^p for real p; requires value() > 0.
  Jet pow(double p) const;
  // Integer power by repeated multiplication (no positivity requirement).
  Jet powi(int p) const;
  Jet exp() const;

  // Evaluate a polynomial with the given monomial coefficients at this jet.
  Jet poly_eval(std::span<const double> coeffs) const;

  // Sup norm over all stored coefficients (quadrature convergence tests).
  double max_abs_coeff() const;

 private:
  JetOrders ord_;
  int s1_, s2_;            // strides: index = i*s1_ + j*s2_ + k
  std::vector<double> c_;
  int idx(int i, int j, int k) const { return i * s1_ + j * s2_ + k; }
  static JetOrders min_orders(const JetOrders& a, const JetOrders& b);
};

// z and its lambda-derivative, scalar forms.
double z_value(double lam, double r, double t);
double dlambda_z_value(double lam, double r, double t);

// Jets at basepoint (lam, r, t).
Jet z_jet(double lam, double r, double t, JetOrders orders);
Jet dlambda_z_jet(double lam, double r, double t, JetOrders orders);
// Requires lambda^2 + t^2 - r^2 != 0 (always true for t >= r, lambda > 0).
Jet inv_dlambda_z_jet(double lam, double r, double t, JetOrders orders);

// Factored light-cone combinations; *offset* is the exact value of the
// cancellation-prone factor when the caller knows it (quadrature nodes
// carry their distance to the interval ends).
Jet one_plus_z_jet(double lam, double r, double t, JetOrders orders,
                   std::optional<double> r_minus_t_plus_lam = {});
Jet minus_one_minus_z_jet(double lam, double r, double t, JetOrders orders,
                          std::optional<double> t_minus_r_minus_lam = {});
Jet one_minus_z_jet(double lam, double r, double t, JetOrders orders,
                    std::optional<double> t_plus_r_minus_lam = {},
                    std::optional<double> t_minus_r_plus_lam = {});

}  // namespace rwave

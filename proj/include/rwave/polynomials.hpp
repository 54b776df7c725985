#pragma once
// Rodrigues-type polynomial families used by the integral representations:
//
//   P_m  (Legendre)              P_m(x)  = 1/(2^m m!) (d/dx)^m (x^2-1)^m
//   T_m  (Tchebyshev, 1st kind)  T_m(x)  = (-1)^m/(2m-1)!! sqrt(1-x^2)
//                                          (d/dx)^m (1-x^2)^(m-1/2)
//   P_jm (truncated family)      P_jm(x) = 1/(2^m m!) (d/dx)^(m-j) (x^2-1)^m
//
// Each family is expanded once into exact rational monomial coefficients
// (big-integer arithmetic; intermediates overflow int64 already at m = 16)
// and then evaluated by Horner in double.  Degrees above m = 16 are
// rejected rather than risking coefficient overflow in the exposed
// exact-rational view.

#include <cstdint>
#include <span>
#include <vector>

#include "rwave/params.hpp"

namespace rwave::poly {

// Dense univariate polynomial with exact rational coefficients plus a
// double image for fast evaluation.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  int degree() const { return int(exact_.size()) - 1; }
  std::span<const double> coeffs() const { return dbl_; }
  const std::vector<Rational>& exact() const { return exact_; }

  double operator()(double x) const;        // Horner
  Rational eval_exact(const Rational& x) const;
  Polynomial derivative() const;

  bool operator==(const Polynomial& o) const { return exact_ == o.exact_; }

 private:
  std::vector<Rational> exact_;
  std::vector<double> dbl_;
};

inline constexpr int kMaxDegreeParam = 16;

// Cached expansions.  All throw std::invalid_argument outside their stated
// parameter ranges and for m > 16.
const Polynomial& legendre_poly(int m);               // m >= 0
const Polynomial& tchebyshev_poly(int m);             // m >= 1
const Polynomial& truncated_poly(int j, int m);       // 0 <= j <= m

// Point evaluations matching the module surface.  tchebyshev rejects
// |x| > 1 (up to a 1e-9 roundoff allowance for arguments produced by the
// kernel substitutions).
double legendre(int m, double x);
double tchebyshev(int m, double x);
double truncated_P(int j, int m, double x);

}  // namespace rwave::poly

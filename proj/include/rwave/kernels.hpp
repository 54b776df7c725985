// Oscillatory kernels entering the radial integral representations.
//
// With z = z(lambda, r, t) = (lambda^2 + r^2 - t^2) / (2 r lambda):
//
//   U_jm = (1-z)^j Int_0^1 nu^(j-1/2) (1-nu)^(-1/2) T_m(sigma) (1+sigma)^(-1/2) dnu,
//          sigma = nu + (1-nu) z,  defined for -1 <= z <= 1  (0 <= j <= m),
//
//   W_im = Int_{-1}^{1} (sigma-z)^(i-1/2) T_m(sigma) (1-sigma^2)^(-1/2) dsigma,
//          defined for z <= -1  (0 <= i <= m).
//
// U uses a Gauss-Jacobi rule in nu away from z = -1 and a tanh-sinh form of
// the same integral inside the boundary layer; W uses Gauss-Chebyshev away
// from z = -1 and the substitution sigma = cos(u), giving
//   W_im = (-1)^m Int_0^pi (etat + 2 sin^2(u/2))^(i-1/2) cos(m u) du,
// etat = -1-z, near it.  The two tanh-sinh branches coincide at z = -1
// exactly, so U/W matching at lambda = t-r holds by construction for i >= 1.
//
// Rules are refined by node doubling (8 .. 2048); err_est is the difference
// between the last two refinements and `converged` means
// err_est <= rel * max(|value|, 1).
//
// Both ends of the lambda interval are cancellation-prone (1-z vanishes to
// first order at lambda = t+r, 1+z at lambda = |t-r|).  Callers that know the
// exact distances from lambda to the interval ends pass them in; the kernels
// then rebuild the vanishing factors from those distances instead of
// subtracting nearly equal quantities.
#pragma once

#include <optional>

#include "rwave/jet.hpp"

namespace rwave {

struct KernelValue {
  double value = 0.0;
  double err_est = 0.0;
  int nodes = 0;
  bool converged = false;
};

// Exact distances from lambda to the ends of its interval, when the caller
// has them: to_lo = lambda - |t-r| for U (unused for W),
// to_hi = (t+r) - lambda for U, (t-r) - lambda for W.
struct EndpointDistances {
  std::optional<double> to_lo;
  std::optional<double> to_hi;
};

KernelValue u_value(int j, int m, double lam, double r, double t, double rel,
                    EndpointDistances d = {});
KernelValue w_value(int i, int m, double lam, double r, double t, double rel,
                    std::optional<double> to_hi = {});

// Jets in (lambda, r, t).  The (r,t)-order is capped by the kernel index:
// orders[1] + orders[2] <= j (resp. i).  info, when given, receives the
// convergence data for the jet computation.
Jet u_jet(int j, int m, double lam, double r, double t, JetOrders orders,
          double rel, EndpointDistances d = {}, KernelValue* info = nullptr);
Jet w_jet(int i, int m, double lam, double r, double t, JetOrders orders,
          double rel, std::optional<double> to_hi = {},
          KernelValue* info = nullptr);

}  // namespace rwave

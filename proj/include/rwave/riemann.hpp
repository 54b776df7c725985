#pragma once
// The Riemann operator L of the radial wave equation
//
//     d_t^2 u - d_r^2 u - ((n-1)/r) d_r u = 0,    u = [L psi] + d_t [L phi],
//
// in both parities, together with the iterated-by-parts interior
// representations and the H_ij operators they are built from.
//
// Direct forms (valid for all r > 0, t >= 0):
//   odd n:   [Lf] = (1/2) r^(-m-a) Int_{|t-r|}^{t+r} lam^(m+a) f(lam) P_m(z) dlam
//   even n:  [Lf] = C0  r^(-m-a) [ Int_{|t-r|}^{t+r} lam^(m+a) f U_0m dlam
//                                 + Int_0^{max(t-r,0)} lam^(m+a) f W_0m dlam ],
//   C0 = sqrt(2)/(2 pi).
//
// Derived forms (valid for t >= r, i <= j <= l):
//   odd n:   d_t^i [Lf] = ((-1)^j/2) Int_{t-r}^{t+r} H_ij f . r^(-m-a) P_jm(z) dlam
//   even n:  d_t^i [Lf] = C_j [ Int_{t-r}^{t+r} H_ij f . r^(-m-a) U_jm dlam
//                              + Int_0^{t-r}   H_ij f . r^(-m-a) W_jm dlam ],
//   C_j = C0 / prod_{q=1..j} (q - 1/2), fixed by the integration-by-parts
//   factor 1/(j+1/2) and cross-checked by the j-equivalence tests.
//
// D^beta with beta over (r, t) commutes with the derived integrals for
// |beta| <= j (the kernels vanish to order j at lam = t+r and the U/W pair
// matches at lam = t-r, so no boundary terms appear); derived_jet exposes
// that route.  For t < r only the direct forms exist and time derivatives
// fall back to Richardson-extrapolated central differences.
//
// The outer lambda integrals use tanh-sinh with interval splitting at the
// light-cone ends; every node carries its exact distance to those ends so
// the kernels can rebuild their vanishing factors without cancellation.
// The inner-cone (W) integral's lam -> 0 end is clipped at lam = 1e-60:
// its integrand is O(lam^l) there, so the truncation sits far below every
// advertised tolerance while keeping half-integer powers of 1/lam from
// overflowing at tanh-sinh tail nodes.

#include <array>
#include <optional>

#include "rwave/jet.hpp"
#include "rwave/params.hpp"
#include "rwave/profile.hpp"

namespace rwave {

// Quadrature knobs for one evaluation.  A result is accepted when the
// outer rule reports relative convergence or its error estimate falls
// below quad_abs; otherwise the evaluation throws std::runtime_error.
struct EvalOptions {
  double quad_rel = 1e-10;    // outer lambda integral, relative
  double quad_abs = 1e-13;    // absolute fallback for near-zero integrals
  double kernel_rel = 1e-10;  // inner kernel integrals
  int max_level = 12;         // outer tanh-sinh level cap
};

// H_ij f as a jet in (lambda, r, t) at the given base point:
//   H_00 f     = lam^(m+a) f(lam)
//   H_0,j+1 f  = d_lam( (d_lam z)^(-1) . H_0j f )
//   H_1j f     = d_t H_0j f - d_lam( (d_lam z)^(-1) . d_t z . H_0j f )
// Requires t >= r (no pole of (d_lam z)^(-1) there), lam > 0, i <= j,
// i in {0,1}, and f with derivatives up to order i + j + orders[0].
Jet h_op_jet(const RadialProfile& f, const DimParams& dims, int i, int j,
             double lam, double r, double t, JetOrders orders);

// Point value of H_ij f.
double h_op(const RadialProfile& f, const DimParams& dims, int i, int j,
            double lam, double r, double t);

// Direct Riemann operator [Lf](r, t); r > 0, t >= 0.
double apply_L(const RadialProfile& f, const DimParams& dims, double r,
               double t, const EvalOptions& opts = {});

// Derived representation of d_t^i [Lf](r, t); t >= r, i <= j <= l.
double apply_L_derived(const RadialProfile& f, const DimParams& dims, int i,
                       int j, double r, double t,
                       const EvalOptions& opts = {});

// Jet of d_t^i [Lf] in (r, t) up to orders (br, bt); br + bt <= j <= l,
// t >= r.  deriv(0, br, bt) of the result is D^(br,bt) d_t^i [Lf].
Jet derived_jet(const RadialProfile& f, const DimParams& dims, int i, int j,
                double r, double t, int br, int bt,
                const EvalOptions& opts = {});

enum class Route { direct, derived, finite_difference };

struct SolutionEval {
  double value = 0.0;
  std::array<int, 2> beta{0, 0};  // derivative orders in (r, t)
  Route route = Route::direct;
};

// u0(r, t) = [L psi] + d_t [L phi].  The time derivative uses the derived
// i = 1 representation for t >= r and Richardson time differencing of
// apply_L for t < r; at t = 0 the Cauchy datum phi(r) is returned.
double solve(const RadialProfile& phi, const RadialProfile& psi,
             const DimParams& dims, double r, double t,
             const EvalOptions& opts = {});

// D^beta u0 with beta = (br, bt), br + bt <= l.  Route: derived jets for
// t >= r, nested Richardson stencils on solve for t < r; force picks a
// route explicitly (cross-validation), throwing if it is unavailable at
// the requested point.
SolutionEval derivative(const RadialProfile& phi, const RadialProfile& psi,
                        const DimParams& dims, int br, int bt, double r,
                        double t, const EvalOptions& opts = {},
                        std::optional<Route> force = {});

}  // namespace rwave

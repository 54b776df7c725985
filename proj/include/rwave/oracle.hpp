#pragma once
// Independent solution oracles used to validate the integral
// representations.
//
//  * descent_solution: exact closed-form family for odd n = 3 + 2q, built
//    by applying the dimensional-descent operator (r^-1 d_r)^q to the
//    d'Alembert spherical-means solution (G(t+r) - G(t-r))/r.  Evaluated
//    with univariate jets -- no quadrature anywhere, so it shares nothing
//    with the representation code paths.  Near the origin the explicit
//    formula loses one digit per power of 1/r to cancellation, so for
//    r < 0.6 the evaluation switches to the everywhere-convergent even
//    Taylor series  u(r,t) = 2 sum_{p>=q} G^(2p+1)(t) m_p r^(2(p-q)),
//    m_p = 2^q p! / ((2p+1)! (p-q)!),  which also gives exact values at
//    r = 0.  Intended for modest q (the verification range uses q <= 2);
//    for large q the formula branch near the switch radius degrades.
//
//  * fd_solve: second-order leapfrog discretization of
//    u_tt = r^(1-n) d_r(r^(n-1) d_r u) on [0, R] in conservative flux
//    form, which keeps the spatial operator self-adjoint in the r^(n-1)
//    weight (the naive centered (n-1)/r u_r form is non-normal at the
//    first interior point and unstable for n >= 6).  The origin row is
//    the half-cell balance 2n (u_1 - u_0) / dr^2, which coincides with
//    the L'Hopital limit n u_rr(0).  Keep R >= r_max + t_max so the
//    Dirichlet outer boundary stays causally disconnected from the
//    measurement region, and keep dt somewhat below the CFL bound (the
//    first interior row tightens it to roughly dr * 2 / (1.5)^((n-1)/2);
//    dt = 0.35 dr is safe through n = 7).
//
//  * residual: second-order discrete wave operator applied to any
//    callable u(r, t); an FD field is used through its interpolating
//    callable [&](double r, double t) { return sol.at(r, t); }.
//
// residual takes the dimension as a plain integer rather than DimParams:
// the q = 0 sanity tier checks the 3-d d'Alembert solution and n = 3 has
// no DimParams (the representation machinery starts at n = 4).

#include <functional>
#include <utility>
#include <vector>

#include "rwave/params.hpp"
#include "rwave/profile.hpp"

namespace rwave {

// Smooth univariate generator: fills out[0..order] with d^s/dx^s G(x).
using Generator = std::function<void(double x, int order, double* out)>;

// u(r, t) = (r^-1 d_r)^q [(G(t+r) - G(t-r)) / r], an exact radial solution
// of the wave equation in dimension n = 3 + 2q.  r >= 0, any real t.
// Needs G derivatives to order max(q + 1, 2q + 73) depending on branch.
double descent_solution(const Generator& G, int q, double r, double t);
double descent_dt(const Generator& G, int q, double r, double t);
double descent_dr(const Generator& G, int q, double r, double t);

// Initial data of descent_solution packaged for the representation code:
// phi(r) = u(r, 0) and psi(r) = d_t u(r, 0), with derivatives to
// max_order.  The envelope is metadata chosen by the caller.
RadialProfile descent_phi(const Generator& G, int q, int max_order,
                          Envelope env);
RadialProfile descent_psi(const Generator& G, int q, int max_order,
                          Envelope env);

struct FDGrid {
  double R = 8.0;     // outer radius (rounded to a whole number of cells)
  double dr = 0.02;   // spatial step
  double dt = 0.007;  // time step; CFL requires dt <= 0.9 dr (see above)
  int steps = 500;    // time steps to take
  void validate() const;  // throws std::invalid_argument
};

struct FDSolution {
  FDGrid grid;
  int n = 0;
  std::vector<std::vector<double>> snaps;  // snaps[k][i] = u(i dr, k dt)
  // Bilinear interpolation; throws std::out_of_range outside the grid.
  double at(double r, double t) const;
  // Discrete energy  sum_i (u_t^2 + u_r^2) r^(n-1) dr  at step k, with
  // u_t centered in time (needs 1 <= k <= steps - 1).
  double energy(int k) const;
};

FDSolution fd_solve(const RadialProfile& phi, const RadialProfile& psi,
                    const DimParams& dims, const FDGrid& grid);

struct ResidualStats {
  double max_abs = 0.0;
  double rms = 0.0;
  int count = 0;
};

// Max / RMS of  u_tt - u_rr - ((n-1)/r) u_r  over the sample points,
// discretized with centered second-order stencils of step h.  Throws
// std::domain_error if a stencil would leave {r > 0, t >= 0}.
ResidualStats residual(const std::function<double(double, double)>& u, int n,
                       const std::vector<std::pair<double, double>>& pts,
                       double h);

}  // namespace rwave

#pragma once
// Quadrature building blocks.
//
//  * tanh-sinh (double-exponential) rules for the outer lambda integrals:
//    tolerant of integrable algebraic endpoint singularities, and the
//    integrand receives its exact distance to each interval end so that
//    light-cone factors like (r-t+lambda)^(-1/2) can be formed without
//    cancellation.  Scalar and jet-valued variants share one template.
//  * Gauss-Jacobi rules on [0,1] for the weight nu^(j-1/2) (1-nu)^(-1/2)
//    (inner kernel integrals after the nu-substitution), built by
//    Golub-Welsch: nodes from the symmetric tridiagonal Jacobi matrix
//    (Eigen, eigenvalues only), weights from the Christoffel function.
//  * Gauss-Chebyshev (first kind) for integrals against (1-sigma^2)^(-1/2).
//  * Adaptive Gauss-Kronrod 7/15 with globally greedy panel refinement: the independent
//    brute-force oracle used by tests and the lemma checks.

#include <cmath>
#include <functional>
#include <vector>

#include "rwave/jet.hpp"

namespace rwave::quad {

struct Result {
  double value = 0.0;
  double err_est = 0.0;
  int nodes = 0;
  bool converged = false;
};

struct JetResult {
  Jet value;
  double err_est = 0.0;
  int nodes = 0;
  bool converged = false;
};

// Integrand signature: f(x, dist_lo, dist_hi) with x = a + dist_lo =
// b - dist_hi held to full precision near the ends.
using TSIntegrand = std::function<double(double, double, double)>;
using TSJetIntegrand = std::function<Jet(double, double, double)>;

Result tanh_sinh(const TSIntegrand& f, double a, double b, double rel_tol,
                 int max_level = 12);
JetResult tanh_sinh_jet(const TSJetIntegrand& f, double a, double b,
                        double rel_tol, JetOrders orders, int max_level = 12);

struct NodesWeights {
  std::vector<double> x, w;
};

// Rule of size n for integral_0^1 nu^(j-1/2) (1-nu)^(-1/2) g(nu) dnu,
// exact for polynomial g of degree <= 2n-1.  Cached; thread-safe.
const NodesWeights& gauss_jacobi01(int j, int n);

// Rule of size n for integral_-1^1 (1-x^2)^(-1/2) g(x) dx.  Cached.
const NodesWeights& gauss_chebyshev(int n);

// Adaptive Gauss-Kronrod 7/15.  abs_floor enters the acceptance test as
// rel_tol * max(|I|, abs_floor) to keep near-zero integrals from driving
// infinite refinement.
Result adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double rel_tol, double abs_floor = 1e-300, int max_panels = 20000);

namespace detail {

// One tanh-sinh level sweep shared by the scalar and jet variants.
// Accum must provide: zero element, axpy(double w, value), scale-by-half,
// and a sup-style magnitude for the convergence test.
struct TSNode {
  double x;        // abscissa in (-1, 1)
  double dist_lo;  // 1 + x, computed without cancellation
  double dist_hi;  // 1 - x
  double w;        // weight including the level's h factor
};

// Nodes of level L (h = 2^-L) that are new at that level (odd multiples
// of h for L > 0; all multiples for L == 0).  Cached; thread-safe.
const std::vector<TSNode>& ts_level(int level);

}  // namespace detail

// Shared engine: T needs T+T, T*double, and a norm functional.  Node
// weights carry their level's h factor, so advancing a level halves the
// running total (h -> h/2 re-weights every previous node) and adds the
// new odd-multiple nodes as-is.
template <class T, class F, class Norm>
void tanh_sinh_engine(F&& f, double a, double b, double rel_tol, int max_level,
                      T zero, Norm&& norm, T& out_value, double& out_err,
                      int& out_nodes, bool& out_converged) {
  const double c = 0.5 * (a + b), s = 0.5 * (b - a);
  out_nodes = 0;
  out_err = HUGE_VAL;
  out_converged = false;
  T total = zero, prev = zero;
  if (!(b > a)) {  // empty or inverted interval: exact zero
    out_value = zero;
    out_err = 0.0;
    out_converged = true;
    return;
  }
  for (int level = 0; level <= max_level; ++level) {
    T add = zero;
    for (const auto& nd : detail::ts_level(level)) {
      const double dlo = s * nd.dist_lo, dhi = s * nd.dist_hi;
      if (dlo <= 0.0 || dhi <= 0.0) continue;  // underflowed tail node
      // abscissa from the nearer end: c + s*x can round past an interval
      // end (below zero for a ~ 0), violating the x = a + dist_lo contract
      const double lam = (nd.x <= 0.0) ? a + dlo : b - dhi;
      add = add + f(lam, dlo, dhi) * (s * nd.w);
      ++out_nodes;
    }
    total = (level == 0) ? add : total * 0.5 + add;
    if (level >= 2) {
      out_err = norm(total - prev);
      if (out_err <= rel_tol * std::max(norm(total), 1e-300)) {
        out_converged = true;
        out_value = total;
        return;
      }
    }
    prev = total;
  }
  out_value = total;
}

}  // namespace rwave::quad

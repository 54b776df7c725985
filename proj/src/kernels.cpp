#include "rwave/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "rwave/polynomials.hpp"
#include "rwave/quadrature.hpp"

namespace rwave {

namespace {

constexpr double kEtaBranch = 1e-2;  // tanh-sinh takes over below this
constexpr int kMinNodes = 8;
constexpr int kMaxNodes = 2048;

void check_indices(int idx, int m, const char* what) {
  if (m < 1 || m > poly::kMaxDegreeParam)
    throw std::invalid_argument(std::string(what) + ": m out of range");
  if (idx < 0 || idx > m)
    throw std::invalid_argument(std::string(what) + ": index out of range");
}

// Clamp tiny negative values produced by roundoff at the interval ends;
// anything materially negative means the caller left the kernel's domain.
double clamp_nonneg(double x, double scale, const char* what) {
  if (x >= 0.0) return x;
  if (x > -1e-9 * scale) return 0.0;
  throw std::domain_error(std::string(what) + ": lambda outside domain");
}

struct UGeom {
  double eta;    // 1 + z
  double omega;  // 1 - z
};

// eta = (r+t+lam)(r-t+lam) / (2 r lam), omega = (t+r-lam)(t-r+lam) / (2 r lam).
// For t >= r the factor r-t+lam cancels at lam = |t-r| and t+r-lam at t+r;
// for t < r both omega factors cancel, one at each end.  Exact endpoint
// distances, when supplied, replace the cancelling factors.
UGeom u_geometry(double lam, double r, double t, const EndpointDistances& d) {
  if (!(lam > 0.0) || !(r > 0.0) || !(t >= 0.0))
    throw std::domain_error("u kernel: need lam > 0, r > 0, t >= 0");
  const double inv = 1.0 / (2.0 * r * lam);
  const double lo = std::abs(t - r);
  const double g = (t >= r) ? (d.to_lo ? *d.to_lo : lam - lo) : (r - t + lam);
  const double bu = (t >= r) ? (t - r + lam) : (d.to_lo ? *d.to_lo : lam - lo);
  const double au = d.to_hi ? *d.to_hi : (t + r - lam);
  UGeom geom;
  geom.eta = clamp_nonneg((r + t + lam) * g * inv, 1.0, "u kernel");
  geom.omega = clamp_nonneg(au * bu * inv, 1.0, "u kernel");
  return geom;
}

double w_etat(double lam, double r, double t, std::optional<double> to_hi) {
  if (!(lam > 0.0) || !(r > 0.0) || !(t > r))
    throw std::domain_error("w kernel: need lam > 0, 0 < r < t");
  const double e = to_hi ? *to_hi : (t - r) - lam;
  return clamp_nonneg(e * (t + r + lam) / (2.0 * r * lam), 1.0, "w kernel");
}

double ipow(double x, int p) {
  double out = 1.0;
  for (int q = 0; q < p; ++q) out *= x;
  return out;
}

// Node-doubled evaluation shared by the two fixed-rule branches.  eval(N)
// computes the full rule of size N; convergence compares successive sizes.
template <class Eval>
KernelValue doubled(double rel, Eval&& eval) {
  KernelValue out;
  double prev = 0.0;
  for (int n = kMinNodes; n <= kMaxNodes; n *= 2) {
    out.value = eval(n);
    out.nodes = n;
    if (n > kMinNodes) {
      out.err_est = std::abs(out.value - prev);
      if (out.err_est <= rel * std::max(std::abs(out.value), 1.0)) {
        out.converged = true;
        return out;
      }
    }
    prev = out.value;
  }
  return out;
}

template <class Eval>
KernelValue doubled_jet(double rel, Jet& out_jet, Eval&& eval) {
  KernelValue out;
  Jet prev = eval(kMinNodes);
  out.nodes = kMinNodes;
  for (int n = 2 * kMinNodes; n <= kMaxNodes; n *= 2) {
    out_jet = eval(n);
    out.nodes = n;
    out.err_est = (out_jet - prev).max_abs_coeff();
    out.value = out_jet.value();
    if (out.err_est <= rel * std::max(out_jet.max_abs_coeff(), 1.0)) {
      out.converged = true;
      return out;
    }
    prev = out_jet;
  }
  out_jet = prev;
  return out;
}

}  // namespace

KernelValue u_value(int j, int m, double lam, double r, double t, double rel,
                    EndpointDistances d) {
  check_indices(j, m, "u kernel");
  const UGeom g = u_geometry(lam, r, t, d);
  const poly::Polynomial& T = poly::tchebyshev_poly(m);

  if (g.eta >= kEtaBranch) {
    // sigma = 1 - (1-nu) omega, 1 + sigma = eta + nu omega.
    return doubled(rel, [&](int n) {
      const auto& rule = quad::gauss_jacobi01(j, n);
      double s = 0.0;
      for (size_t q = 0; q < rule.x.size(); ++q) {
        const double nu = rule.x[q];
        const double sig = 1.0 - (1.0 - nu) * g.omega;
        s += rule.w[q] * T(sig) / std::sqrt(g.eta + nu * g.omega);
      }
      return ipow(g.omega, j) * s;
    });
  }

  // Boundary layer at z = -1: pull (1-z)^(j-1/2) out front, leaving
  // nu^(j-1/2) (1-nu)^(-1/2) (nu + eta2)^(-1/2) T_m(sigma), eta2 = eta/omega.
  const double eta2 = g.eta / g.omega;
  auto f = [&](double nu, double dlo, double dhi) {
    const double sig = 1.0 - dhi * g.omega;
    return std::pow(dlo, j - 0.5) / std::sqrt(dhi) * T(sig) /
           std::sqrt(dlo + eta2);
  };
  auto q = quad::tanh_sinh(f, 0.0, 1.0, rel);
  const double front = std::pow(g.omega, j - 0.5);
  return {front * q.value, front * q.err_est, q.nodes, q.converged};
}

KernelValue w_value(int i, int m, double lam, double r, double t, double rel,
                    std::optional<double> to_hi) {
  check_indices(i, m, "w kernel");
  const double etat = w_etat(lam, r, t, to_hi);
  const poly::Polynomial& T = poly::tchebyshev_poly(m);

  if (etat >= kEtaBranch) {
    // Gauss-Chebyshev absorbs (1-sigma^2)^(-1/2); sigma - z = (1+sigma) + etat
    // with 1 + cos(theta) = 2 cos^2(theta/2).
    return doubled(rel, [&](int n) {
      double s = 0.0;
      const double wq = M_PI / n;
      for (int q = 1; q <= n; ++q) {
        const double th = (2.0 * q - 1.0) * M_PI / (2.0 * n);
        const double cs = std::cos(0.5 * th);
        s += wq * std::pow(2.0 * cs * cs + etat, i - 0.5) * T(std::cos(th));
      }
      return s;
    });
  }

  // sigma = cos(u): cos(u) - z = etat + 2 sin^2(u/2) resolves the boundary
  // layer at u = 0 no matter how small etat is; at etat = 0 this is the
  // same integral the U branch computes, so the two match at lambda = t-r.
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  auto f = [&](double u, double dlo, double) {
    const double sh = std::sin(0.5 * dlo);
    return std::pow(etat + 2.0 * sh * sh, i - 0.5) * std::cos(m * dlo);
  };
  auto q = quad::tanh_sinh(f, 0.0, M_PI, rel);
  return {sign * q.value, q.err_est, q.nodes, q.converged};
}

Jet u_jet(int j, int m, double lam, double r, double t, JetOrders orders,
          double rel, EndpointDistances d, KernelValue* info) {
  check_indices(j, m, "u kernel");
  if (orders[1] + orders[2] > j)
    throw std::invalid_argument("u_jet: (r,t) derivative order exceeds j");
  const UGeom g = u_geometry(lam, r, t, d);  // early domain validation
  const Jet eta_j =
      one_plus_z_jet(lam, r, t, orders, (t >= r) ? d.to_lo : std::nullopt);
  const Jet omega_j = one_minus_z_jet(lam, r, t, orders, d.to_hi,
                                      (t >= r) ? std::nullopt : d.to_lo);
  const poly::Polynomial& T = poly::tchebyshev_poly(m);
  const Jet one = Jet::constant(1.0, orders);

  Jet out = Jet::constant(0.0, orders);
  KernelValue kv;
  if (g.eta >= kEtaBranch) {
    kv = doubled_jet(rel, out, [&](int n) {
      const auto& rule = quad::gauss_jacobi01(j, n);
      Jet s = Jet::constant(0.0, orders);
      for (size_t q = 0; q < rule.x.size(); ++q) {
        const double nu = rule.x[q];
        const Jet sig = one - omega_j * (1.0 - nu);
        const Jet ops = eta_j + omega_j * nu;
        s = s + sig.poly_eval(T.coeffs()) * ops.pow(-0.5) * rule.w[q];
      }
      return omega_j.powi(j) * s;
    });
  } else {
    const Jet eta2_j = eta_j * omega_j.reciprocal();
    auto f = [&](double nu, double dlo, double dhi) {
      const Jet sig = one - omega_j * dhi;
      const Jet den = (eta2_j + Jet::constant(dlo, orders)).pow(-0.5);
      const double fac = std::pow(dlo, j - 0.5) / std::sqrt(dhi);
      return sig.poly_eval(T.coeffs()) * den * fac;
    };
    auto q = quad::tanh_sinh_jet(f, 0.0, 1.0, rel, orders);
    out = omega_j.pow(j - 0.5) * q.value;
    kv = {out.value(), std::pow(g.omega, j - 0.5) * q.err_est, q.nodes,
          q.converged};
  }
  kv.value = out.value();
  if (info) *info = kv;
  return out;
}

Jet w_jet(int i, int m, double lam, double r, double t, JetOrders orders,
          double rel, std::optional<double> to_hi, KernelValue* info) {
  check_indices(i, m, "w kernel");
  if (orders[1] + orders[2] > i)
    throw std::invalid_argument("w_jet: (r,t) derivative order exceeds i");
  const double etat = w_etat(lam, r, t, to_hi);
  const Jet etat_j = minus_one_minus_z_jet(lam, r, t, orders, to_hi);
  const poly::Polynomial& T = poly::tchebyshev_poly(m);

  Jet out = Jet::constant(0.0, orders);
  KernelValue kv;
  if (etat >= kEtaBranch) {
    kv = doubled_jet(rel, out, [&](int n) {
      Jet s = Jet::constant(0.0, orders);
      const double wq = M_PI / n;
      for (int q = 1; q <= n; ++q) {
        const double th = (2.0 * q - 1.0) * M_PI / (2.0 * n);
        const double cs = std::cos(0.5 * th);
        const Jet core = etat_j + Jet::constant(2.0 * cs * cs, orders);
        s = s + core.pow(i - 0.5) * (wq * T(std::cos(th)));
      }
      return s;
    });
  } else {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    auto f = [&](double u, double dlo, double) {
      const double sh = std::sin(0.5 * dlo);
      const Jet core = etat_j + Jet::constant(2.0 * sh * sh, orders);
      return core.pow(i - 0.5) * std::cos(m * dlo);
    };
    auto q = quad::tanh_sinh_jet(f, 0.0, M_PI, rel, orders);
    out = q.value * sign;
    kv = {out.value(), q.err_est, q.nodes, q.converged};
  }
  kv.value = out.value();
  if (info) *info = kv;
  return out;
}

}  // namespace rwave

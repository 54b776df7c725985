#include "rwave/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>

#include "rwave/kernels.hpp"
#include "rwave/polynomials.hpp"
#include "rwave/quadrature.hpp"

namespace rwave {

namespace {

// Profiles are never evaluated closer to the origin than this.  The most
// singular admissible integrand behaves like lam^(delta-1) with delta =
// 1/2 (derived representation, data at the low-order envelope limit,
// evaluated on the cone t = r), so truncating [0, kOriginFloor] perturbs
// the integrals by O(sqrt(kOriginFloor)) ~ 1e-9 -- below the verification
// tolerances -- while keeping the negative powers of lam in singular data
// and the half-integer powers of 1/lam in the inner-cone kernel finite at
// tanh-sinh tail nodes (worst coefficient ~ lam^-7 = 1e126 here).
constexpr double kOriginFloor = 1e-18;

// Derived-representation kernel jets carry log / half-integer-power
// singularities at the inner cone boundary lam = t - r; closer to it than
// this, internal powers overflow at tanh-sinh tail nodes.  The clamped
// region contributes at most ~ sqrt(kConeClamp) ~ 1e-15 to any jet
// coefficient, far below quad_abs.
constexpr double kConeClamp = 1e-30;

const double kC0 = std::sqrt(2.0) / (2.0 * M_PI);  // even-parity prefactor

struct ClipIv {
  double lo, hi;
  double shift_lo, shift_hi;  // exact offsets back to the unclipped ends
};

// Intersect [lo0, hi0] with the profile support and the origin floor.
// shift_* let quadrature nodes recover their exact distance to the true
// interval ends (the ones the kernels' vanishing factors reference).
std::optional<ClipIv> clip(double lo0, double hi0, const RadialProfile& f) {
  double lo = std::max(lo0, kOriginFloor), hi = hi0;
  if (f.support()) {
    lo = std::max(lo, f.support()->lo);
    hi = std::min(hi, f.support()->hi);
  }
  if (!(hi > lo)) return std::nullopt;
  return ClipIv{lo, hi, lo - lo0, hi0 - hi};
}

[[noreturn]] void fail(const char* what, double r, double t, double err) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%s quadrature did not converge at (r, t) = (%.6g, %.6g), "
                "err_est = %.3g",
                what, r, t, err);
  throw std::runtime_error(buf);
}

void require_quad(const quad::Result& res, const EvalOptions& opts,
                  const char* what, double r, double t) {
  if (res.converged) return;
  if (res.err_est <= opts.quad_abs * std::max(1.0, std::abs(res.value))) return;
  fail(what, r, t, res.err_est);
}

void require_quad(const quad::JetResult& res, const EvalOptions& opts,
                  const char* what, double r, double t) {
  if (res.converged) return;
  if (res.err_est <= opts.quad_abs * std::max(1.0, res.value.max_abs_coeff()))
    return;
  fail(what, r, t, res.err_est);
}

// The even-parity kernels are logarithmically singular at the inner cone
// boundary lam = t - r, so tanh-sinh tail nodes sitting at distances
// d ~ e^{-c 2^level} from it cannot drive the kernel quadrature all the
// way to kernel_rel.  An absolute kernel error E at such a node shifts
// the outer integral by at most ~ E * gmag * d (d bounds the whole
// lam-measure between the node and the singular end), so the evaluation
// is still accepted when that budget is far below quad_abs.  Away from
// the singular end d is O(1) and the test keeps its teeth.
void require_kernel(const KernelValue& kv, double d_sing, double gmag,
                    const EvalOptions& opts, const char* what, double lam,
                    double r, double t) {
  if (kv.converged) return;
  if (kv.err_est * gmag * std::min(d_sing, 1.0) <= 0.01 * opts.quad_abs) return;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%s kernel did not converge at lam = %.6g, (r, t) = "
                "(%.6g, %.6g), err_est = %.3g",
                what, lam, r, t, kv.err_est);
  throw std::runtime_error(buf);
}

// z rebuilt from whichever light-cone factorization is cancellation-free:
// 1-z = (t+r-lam)(t-r+lam)/(2 r lam), 1+z = (r+t+lam)(r-t+lam)/(2 r lam).
// dlo / dhi are the exact distances from lam to |t-r| and t+r.
double stable_z(double lam, double r, double t, double dlo, double dhi) {
  const double inv = 1.0 / (2.0 * r * lam);
  double eta, omega;
  if (t >= r) {
    eta = dhi * ((t - r) + lam) * inv;
    omega = ((r + t) + lam) * dlo * inv;
  } else {
    eta = dhi * dlo * inv;  // z -> 1 at both ends when t < r
    omega = ((r + t) + lam) * ((r - t) + lam) * inv;
  }
  return (eta <= omega) ? 1.0 - eta : omega - 1.0;
}

// Jet analogue; derived representations only need it for t >= r.
Jet stable_z_jet(double lam, double r, double t, JetOrders o, double dlo,
                 double dhi) {
  Jet eta = one_minus_z_jet(lam, r, t, o, dhi, std::nullopt);
  Jet omega = one_plus_z_jet(lam, r, t, o, dlo);
  return (eta.value() <= omega.value()) ? Jet::constant(1.0, o) - eta
                                        : omega - 1.0;
}

// lam^(m+a) as a jet (integer power in odd parity, half-integer in even).
Jet lam_pow_ma(const DimParams& dims, double lam, JetOrders o) {
  Jet lj = Jet::variable(0, lam, o);
  return dims.odd ? lj.powi(int(dims.m_plus_a().num()))
                  : lj.pow(dims.m_plus_a().value());
}

Jet h0_rec(const RadialProfile& f, const DimParams& dims, int j, double lam,
           double r, double t, JetOrders o) {
  if (j == 0) return lam_pow_ma(dims, lam, o) * f.lift(lam, o);
  JetOrders up{o[0] + 1, o[1], o[2]};
  return (inv_dlambda_z_jet(lam, r, t, up) *
          h0_rec(f, dims, j - 1, lam, r, t, up))
      .d_lambda();
}

}  // namespace

Jet h_op_jet(const RadialProfile& f, const DimParams& dims, int i, int j,
             double lam, double r, double t, JetOrders orders) {
  if (i < 0 || i > 1 || j < i)
    throw std::invalid_argument("h_op: need i in {0,1} and j >= i");
  if (!(lam > 0.0) || !(r > 0.0) || !(t >= r))
    throw std::domain_error("h_op: requires lam > 0 and 0 < r <= t");
  if (f.is_zero()) return Jet::constant(0.0, orders);
  if (f.max_order() < i + j + orders[0])
    throw std::invalid_argument(
        "h_op: profile provides too few derivatives for H_ij");
  if (i == 0) return h0_rec(f, dims, j, lam, r, t, orders);
  JetOrders ot{orders[0], orders[1], orders[2] + 1};
  Jet A = h0_rec(f, dims, j, lam, r, t, ot).d_t();
  JetOrders ol{orders[0] + 1, orders[1], orders[2]};
  JetOrders olt{orders[0] + 1, orders[1], orders[2] + 1};
  Jet B = inv_dlambda_z_jet(lam, r, t, ol) *
          z_jet(lam, r, t, olt).d_t() * h0_rec(f, dims, j, lam, r, t, ol);
  return A - B.d_lambda();
}

double h_op(const RadialProfile& f, const DimParams& dims, int i, int j,
            double lam, double r, double t) {
  return h_op_jet(f, dims, i, j, lam, r, t, {0, 0, 0}).value();
}

double apply_L(const RadialProfile& f, const DimParams& dims, double r,
               double t, const EvalOptions& opts) {
  if (!(r > 0.0)) throw std::domain_error("apply_L: requires r > 0");
  if (!(t >= 0.0)) throw std::domain_error("apply_L: requires t >= 0");
  if (f.is_zero()) return 0.0;
  const double ma = dims.m_plus_a().value();
  const double lo0 = std::abs(t - r), hi0 = t + r;
  double total = 0.0;
  if (auto iv = clip(lo0, hi0, f)) {
    auto integrand = [&](double lam, double dlo, double dhi) -> double {
      const double Dlo = dlo + iv->shift_lo, Dhi = dhi + iv->shift_hi;
      const double g = std::pow(lam, ma) * f.value(lam);
      if (dims.odd)
        return g * poly::legendre(dims.m, stable_z(lam, r, t, Dlo, Dhi));
      KernelValue kv =
          u_value(0, dims.m, lam, r, t, opts.kernel_rel, {Dlo, Dhi});
      require_kernel(kv, t >= r ? Dlo : 1.0, std::abs(g), opts, "U", lam, r,
                     t);
      return g * kv.value;
    };
    quad::Result res =
        quad::tanh_sinh(integrand, iv->lo, iv->hi, opts.quad_rel, opts.max_level);
    require_quad(res, opts, "apply_L cone", r, t);
    total += res.value;
  }
  if (!dims.odd && t - r > 2.0 * kOriginFloor) {
    if (auto iw = clip(0.0, t - r, f)) {
      auto integrand = [&](double lam, double, double dhi) -> double {
        const double Dhi = dhi + iw->shift_hi;
        const double g = std::pow(lam, ma) * f.value(lam);
        KernelValue kv = w_value(0, dims.m, lam, r, t, opts.kernel_rel, Dhi);
        require_kernel(kv, Dhi, std::abs(g), opts, "W", lam, r, t);
        return g * kv.value;
      };
      quad::Result res =
          quad::tanh_sinh(integrand, iw->lo, iw->hi, opts.quad_rel, opts.max_level);
      require_quad(res, opts, "apply_L inner cone", r, t);
      total += res.value;
    }
  }
  return (dims.odd ? 0.5 : kC0) * std::pow(r, -ma) * total;
}

namespace {

// Shared worker for the derived representations: the jet of d_t^i [Lf] in
// (r, t) up to orders (br, bt).
Jet derived_rep(const RadialProfile& f, const DimParams& dims, int i, int j,
                double r, double t, int br, int bt, const EvalOptions& opts) {
  if (br < 0 || bt < 0 || br + bt > j)
    throw std::invalid_argument("derived: requires 0 <= br + bt <= j");
  if (j > dims.m)
    throw std::invalid_argument("derived: requires j <= m");
  if (!(r > 0.0) || !(t >= r))
    throw std::domain_error("derived: requires t >= r > 0");
  const JetOrders o{0, br, bt};
  if (f.is_zero()) return Jet::constant(0.0, o);
  if (j > f.envelope().l)
    throw std::invalid_argument("derived: requires j <= envelope order l");
  const double ma = dims.m_plus_a().value();
  Jet total = Jet::constant(0.0, o);
  if (auto iv = clip(t - r, t + r, f)) {
    auto integrand = [&](double lam, double dlo, double dhi) -> Jet {
      const double Dlo = dlo + iv->shift_lo, Dhi = dhi + iv->shift_hi;
      if (Dlo < kConeClamp) return Jet::constant(0.0, o);
      Jet H = h_op_jet(f, dims, i, j, lam, r, t, o);
      Jet R = dims.odd ? Jet::variable(1, r, o).powi(-int(dims.m_plus_a().num()))
                       : Jet::variable(1, r, o).pow(-ma);
      if (dims.odd) {
        Jet P = stable_z_jet(lam, r, t, o, Dlo, Dhi)
                    .poly_eval(poly::truncated_poly(j, dims.m).coeffs());
        return H * R * P;
      }
      Jet HR = H * R;
      KernelValue info;
      Jet U = u_jet(j, dims.m, lam, r, t, o, opts.kernel_rel, {Dlo, Dhi}, &info);
      require_kernel(info, Dlo, HR.max_abs_coeff(), opts, "U", lam, r, t);
      return HR * U;
    };
    quad::JetResult res = quad::tanh_sinh_jet(integrand, iv->lo, iv->hi,
                                              opts.quad_rel, o, opts.max_level);
    require_quad(res, opts, "derived cone", r, t);
    total = total + res.value;
  }
  if (!dims.odd && t - r > 2.0 * kOriginFloor) {
    if (auto iw = clip(0.0, t - r, f)) {
      auto integrand = [&](double lam, double, double dhi) -> Jet {
        const double Dhi = dhi + iw->shift_hi;
        if (Dhi < kConeClamp) return Jet::constant(0.0, o);
        Jet HR = h_op_jet(f, dims, i, j, lam, r, t, o) *
                 Jet::variable(1, r, o).pow(-ma);
        KernelValue info;
        Jet W = w_jet(j, dims.m, lam, r, t, o, opts.kernel_rel, Dhi, &info);
        require_kernel(info, Dhi, HR.max_abs_coeff(), opts, "W", lam, r, t);
        return HR * W;
      };
      quad::JetResult res = quad::tanh_sinh_jet(
          integrand, iw->lo, iw->hi, opts.quad_rel, o, opts.max_level);
      require_quad(res, opts, "derived inner cone", r, t);
      total = total + res.value;
    }
  }
  double c;
  if (dims.odd) {
    c = (j % 2 == 0) ? 0.5 : -0.5;  // (-1)^j / 2
  } else {
    c = kC0;
    for (int q = 1; q <= j; ++q) c /= (q - 0.5);
  }
  return total * c;
}

// Richardson-extrapolated central first difference.
template <class F>
double rich1(F&& g, double x, double h) {
  auto D = [&](double hh) { return (g(x + hh) - g(x - hh)) / (2.0 * hh); };
  return (4.0 * D(0.5 * h) - D(h)) / 3.0;
}

// Three-level variant, O(h^6): solve() leans on this for the t < r time
// derivative, where no derived representation exists and the direct
// operator is all we can difference.
template <class F>
double rich2(F&& g, double x, double h) {
  auto D = [&](double hh) { return (g(x + hh) - g(x - hh)) / (2.0 * hh); };
  const double d1 = D(h), d2 = D(0.5 * h), d3 = D(0.25 * h);
  const double r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

// Nested mixed stencil for D^(br,bt) applied to eval(r, t).
double fd_beta(const std::function<double(double, double)>& eval, double r,
               double t, int br, int bt, double hr, double ht) {
  if (br > 0)
    return rich1(
        [&](double rr) { return fd_beta(eval, rr, t, br - 1, bt, hr, ht); }, r,
        hr);
  if (bt > 0)
    return rich1(
        [&](double tt) { return fd_beta(eval, r, tt, br, bt - 1, hr, ht); }, t,
        ht);
  return eval(r, t);
}

}  // namespace

double apply_L_derived(const RadialProfile& f, const DimParams& dims, int i,
                       int j, double r, double t, const EvalOptions& opts) {
  return derived_rep(f, dims, i, j, r, t, 0, 0, opts).value();
}

Jet derived_jet(const RadialProfile& f, const DimParams& dims, int i, int j,
                double r, double t, int br, int bt, const EvalOptions& opts) {
  return derived_rep(f, dims, i, j, r, t, br, bt, opts);
}

double solve(const RadialProfile& phi, const RadialProfile& psi,
             const DimParams& dims, double r, double t,
             const EvalOptions& opts) {
  if (!(r > 0.0)) throw std::domain_error("solve: requires r > 0");
  if (!(t >= 0.0)) throw std::domain_error("solve: requires t >= 0");
  if (!phi.is_zero() && phi.max_order() < phi.envelope().l + 1)
    throw std::invalid_argument("solve: phi must be C^(l+1)");
  if (!psi.is_zero() && psi.max_order() < psi.envelope().l)
    throw std::invalid_argument("solve: psi must be C^l");
  if (t == 0.0) return phi.value(r);  // Cauchy datum
  double u = apply_L(psi, dims, r, t, opts);
  if (phi.is_zero()) return u;
  if (t >= r) return u + apply_L_derived(phi, dims, 1, 1, r, t, opts);
  const double h = std::min({0.25 * (r - t), 0.5 * t, 0.05 * (1.0 + t)});
  return u + rich2([&](double tt) { return apply_L(phi, dims, r, tt, opts); },
                   t, h);
}

SolutionEval derivative(const RadialProfile& phi, const RadialProfile& psi,
                        const DimParams& dims, int br, int bt, double r,
                        double t, const EvalOptions& opts,
                        std::optional<Route> force) {
  if (br < 0 || bt < 0)
    throw std::invalid_argument("derivative: negative orders");
  if (!(r > 0.0) || !(t >= 0.0))
    throw std::domain_error("derivative: requires r > 0, t >= 0");
  const int ab = br + bt;
  for (const RadialProfile* f : {&phi, &psi})
    if (!f->is_zero() && ab > f->envelope().l)
      throw std::invalid_argument("derivative: |beta| exceeds envelope order l");
  if (force && *force == Route::direct) {
    if (ab != 0)
      throw std::invalid_argument(
          "derivative: direct route only evaluates beta = 0");
    return {solve(phi, psi, dims, r, t, opts), {0, 0}, Route::direct};
  }
  // the derived route needs kernel index j = max(|beta|, i) <= m
  const int j_needed = std::max(ab, phi.is_zero() ? 0 : 1);
  const Route route = force ? *force
                      : (t >= r && j_needed <= dims.m)
                          ? Route::derived
                          : Route::finite_difference;
  if (route == Route::derived) {
    if (t < r)
      throw std::domain_error("derivative: derived route requires t >= r");
    double val = 0.0;
    if (!psi.is_zero())
      val += derived_jet(psi, dims, 0, std::max(ab, 0), r, t, br, bt, opts)
                 .deriv(0, br, bt);
    if (!phi.is_zero())
      val += derived_jet(phi, dims, 1, std::max(ab, 1), r, t, br, bt, opts)
                 .deriv(0, br, bt);
    return {val, {br, bt}, Route::derived};
  }
  if (ab == 0)
    return {solve(phi, psi, dims, r, t, opts), {0, 0},
            Route::finite_difference};
  if (bt > 0 && t <= 0.0)
    throw std::domain_error(
        "derivative: time derivatives at t = 0 need a t -> 0+ limit");
  const double dcone = std::abs(t - r);
  const int lev = 1 + ab;
  double ht = std::min(0.5 * t, 0.02 * (1.0 + t));
  double hr = std::min(0.5 * r, 0.02 * (1.0 + r));
  if (dcone > 0.0) {  // keep all stencil points on one side of the cone
    ht = std::min(ht, 0.15 * dcone);
    hr = std::min(hr, 0.15 * dcone);
  }
  auto eval = [&](double rr, double tt) {
    return solve(phi, psi, dims, rr, tt, opts);
  };
  const double val = fd_beta(eval, r, t, br, bt, hr / lev, ht / lev);
  return {val, {br, bt}, Route::finite_difference};
}

}  // namespace rwave

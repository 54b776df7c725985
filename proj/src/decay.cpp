#include "rwave/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <utility>

#include "rwave/jet.hpp"
#include "rwave/quadrature.hpp"

namespace rwave {

const char* to_string(DecayCase c) {
  switch (c) {
    case DecayCase::a: return "a";
    case DecayCase::b: return "b";
    case DecayCase::c: return "c";
    case DecayCase::d: return "d";
    case DecayCase::e: return "e";
    case DecayCase::imp_i: return "imp_i";
    case DecayCase::imp_ii: return "imp_ii";
  }
  return "?";
}

const char* to_string(LogKind k) {
  switch (k) {
    case LogKind::none: return "none";
    case LogKind::ratio_log: return "ratio_log";
    case LogKind::minus_log: return "minus_log";
  }
  return "?";
}

namespace {

void check_bound_args(const DimParams& dims, const Rational& k, int l,
                      int abs_beta, const char* who) {
  if (l < 1 || l > dims.m)
    throw std::invalid_argument(std::string(who) + ": need 1 <= l <= m");
  if (abs_beta < 0 || abs_beta > l)
    throw std::invalid_argument(std::string(who) + ": need 0 <= |beta| <= l");
  if (k < Rational(0))
    throw std::invalid_argument(std::string(who) + ": need k >= 0");
}

void fill_context(DecayBound& bd, const DimParams& dims, const Rational& k,
                  int l, int abs_beta) {
  bd.n = dims.n;
  bd.l = l;
  bd.abs_beta = abs_beta;
  bd.k = k;
  bd.e_r = Rational(l - abs_beta - dims.m);
}

}  // namespace

DecayBound select_bound(const DimParams& dims, const Rational& k, int l,
                        int abs_beta) {
  check_bound_args(dims, k, l, abs_beta, "select_bound");
  const Rational ma = dims.m_plus_a();
  const Rational lb(abs_beta), ll(l);
  DecayBound bd;
  fill_context(bd, dims, k, l, abs_beta);
  if (k < ma) {
    bd.kase = DecayCase::a;
    bd.e_minus = -lb;
    bd.e_plus = lb - ll + Rational(dims.m) - k;
  } else if (k == ma) {
    bd.kase = DecayCase::b;
    bd.e_minus = -lb;
    bd.e_plus = lb - ll - dims.a;
    bd.log_kind = LogKind::ratio_log;
  } else if (k < ma * Rational(2)) {
    bd.kase = DecayCase::c;
    bd.e_minus = ma - k - lb;
    bd.e_plus = lb - ll - dims.a;
  } else if (k == ma * Rational(2)) {
    bd.kase = DecayCase::d;
    bd.e_minus = -(ma + lb);
    bd.e_plus = lb - ll - dims.a;
    bd.log_kind = LogKind::minus_log;
  } else {
    bd.kase = DecayCase::e;
    bd.e_minus = -(ma + lb);
    bd.e_plus = lb - ll - dims.a;
  }
  return bd;
}

std::optional<DecayBound> select_improved(const DimParams& dims,
                                          const Rational& k, int l,
                                          int abs_beta) {
  check_bound_args(dims, k, l, abs_beta, "select_improved");
  const Rational ma = dims.m_plus_a();
  DecayBound bd;
  fill_context(bd, dims, k, l, abs_beta);
  if (k < ma - Rational(l)) {
    bd.kase = DecayCase::imp_i;
    bd.e_minus = Rational(0);
    bd.e_plus = Rational(dims.m - l) - k;
    return bd;
  }
  const Rational g = k - ma + Rational(l);  // k0-1 <= g < k0
  if (g >= Rational(0) && g < Rational(l)) {
    const int k0 = int(g.floor()) + 1;
    bd.kase = DecayCase::imp_ii;
    bd.k0 = k0;
    const std::int64_t em = std::min<std::int64_t>(l - abs_beta - k0, 0);
    bd.e_minus = Rational(em);
    bd.e_plus = Rational(dims.m - l) - k - bd.e_minus;
    return bd;
  }
  return std::nullopt;
}

DecayBound sharpened_bound_odd(const DimParams& dims, const Rational& k,
                               int l, int abs_beta) {
  check_bound_args(dims, k, l, abs_beta, "sharpened_bound_odd");
  if (!dims.odd)
    throw std::invalid_argument("sharpened_bound_odd: odd n only");
  const Rational ma = dims.m_plus_a();
  if (!(k > ma))
    throw std::invalid_argument("sharpened_bound_odd: need k > m+a");
  DecayBound bd;
  fill_context(bd, dims, k, l, abs_beta);
  bd.kase = DecayCase::c;  // the c-form, kept for every k > m+a
  bd.e_minus = ma - k - Rational(abs_beta);
  bd.e_plus = Rational(abs_beta - l) - dims.a;
  return bd;
}

namespace {

double log_factor(const DecayBound& bd, double r, double t) {
  switch (bd.log_kind) {
    case LogKind::ratio_log:
      return 1.0 + std::log(bracket(t + r) / bracket(t - r));
    case LogKind::minus_log:
      return 1.0 + std::log(bracket(t - r));
    case LogKind::none:
      break;
  }
  return 1.0;
}

}  // namespace

double bound_expr(const DecayBound& bd, double eps, double r, double t) {
  if (!(r > 0.0) || !(t >= 0.0))
    throw std::invalid_argument("bound_expr: need r > 0, t >= 0");
  return eps * std::pow(r, bd.e_r.value()) *
         std::pow(bracket(t - r), bd.e_minus.value()) *
         std::pow(bracket(t + r), bd.e_plus.value()) * log_factor(bd, r, t);
}

// ---------------------------------------------------------------------------
// Admissible data families

namespace {

constexpr int kProfileOrderSlack = 6;

// envelope-fit bin width: consecutive sweep samples grouped per fitted point
constexpr std::size_t kFitBin = 3;

RadialProfile::DerivFn power_fn(double p, double q, double amp) {
  return [p, q, amp](double lam, int order, double* out) {
    const JetOrders ords{order, 0, 0};
    Jet x = Jet::variable(0, lam, ords);
    Jet v = x.pow(p) * (x + 1.0).pow(q) * amp;
    for (int s = 0; s <= order; ++s) out[s] = v.deriv(s, 0, 0);
  };
}

// amp exp(-1/((lam-1)(2-lam))) on (1, 2); exact zero within kBumpEdge of
// the edges, where the true value is below 1e-140 anyway.
RadialProfile::DerivFn bump_fn(double amp) {
  return [amp](double lam, int order, double* out) {
    constexpr double kBumpEdge = 3e-3;
    if (lam <= 1.0 + kBumpEdge || lam >= 2.0 - kBumpEdge) {
      std::fill(out, out + order + 1, 0.0);
      return;
    }
    const JetOrders ords{order, 0, 0};
    Jet x = Jet::variable(0, lam, ords);
    Jet p = (x - 1.0) * (-(x - 2.0));
    Jet g = (-p.reciprocal()).exp() * amp;
    for (int s = 0; s <= order; ++s) out[s] = g.deriv(s, 0, 0);
  };
}

// sum_{s<=l+1} lam^s |phi^(s)| + sum_{s<=l} lam^{s+1} |psi^(s)|
double data_sum(const RadialProfile::DerivFn& fphi,
                const RadialProfile::DerivFn& fpsi, int l, double lam,
                std::vector<double>& buf) {
  buf.assign(std::size_t(l) + 2, 0.0);
  fphi(lam, l + 1, buf.data());
  double s = 0.0, w = 1.0;
  for (int q = 0; q <= l + 1; ++q, w *= lam) s += w * std::abs(buf[q]);
  fpsi(lam, l, buf.data());
  w = lam;
  for (int q = 0; q <= l; ++q, w *= lam) s += w * std::abs(buf[q]);
  return s;
}

}  // namespace

ProfilePair make_profile(ProfileKind kind, double eps, const Rational& k,
                         int l, const DimParams& dims) {
  if (!(eps > 0.0)) throw std::invalid_argument("make_profile: need eps > 0");
  check_bound_args(dims, k, l, 0, "make_profile");
  const double pw = double(l - dims.m);
  const double q = double(dims.m - l) - k.value();

  RadialProfile::DerivFn uphi, upsi;
  std::optional<Support> supp;
  if (kind == ProfileKind::power_envelope) {
    uphi = power_fn(pw, q, 1.0);
    upsi = power_fn(pw - 1.0, q, 1.0);
  } else {
    uphi = bump_fn(1.0);
    upsi = bump_fn(1.0);
    supp = Support{1.0, 2.0};
  }

  const auto grid = logspace(1e-4, 1e4, 10000);
  std::vector<double> buf;
  double sup = 0.0;
  for (double lam : grid) {
    const double env = std::pow(lam, pw) * std::pow(1.0 + lam, q);
    const double ratio = data_sum(uphi, upsi, l, lam, buf) / env;
    if (ratio > sup) sup = ratio;
  }
  if (!(sup > 0.0) || !std::isfinite(sup))
    throw std::runtime_error("make_profile: degenerate normalization");
  const double amp = eps / sup;

  ProfilePair pp;
  pp.c_phi = amp;
  pp.c_psi = amp;
  const Envelope env{eps, k, l};
  const int max_order = l + kProfileOrderSlack;
  if (kind == ProfileKind::power_envelope) {
    pp.phi = RadialProfile(power_fn(pw, q, amp), max_order, env);
    pp.psi = RadialProfile(power_fn(pw - 1.0, q, amp), max_order, env);
  } else {
    pp.phi = RadialProfile(bump_fn(amp), max_order, env, supp);
    pp.psi = RadialProfile(bump_fn(amp), max_order, env, supp);
  }

  // re-check the scaled pair on the same grid; a violation here is a bug
  RadialProfile::DerivFn sphi = [&pp](double lam, int o, double* out) {
    pp.phi.derivs(lam, o, out);
  };
  RadialProfile::DerivFn spsi = [&pp](double lam, int o, double* out) {
    pp.psi.derivs(lam, o, out);
  };
  for (double lam : grid) {
    const double cap = eps * std::pow(lam, pw) * std::pow(1.0 + lam, q);
    if (!(data_sum(sphi, spsi, l, lam, buf) <= cap * (1.0 + 1e-9)))
      throw std::runtime_error("make_profile: envelope violated after "
                               "normalization");
  }
  return pp;
}

bool check_singularity(const ProfilePair& pp, const DimParams& dims, int l,
                       double delta) {
  const double wexp = 2.0 * dims.m + 2.0 - delta;
  std::vector<double> buf(std::size_t(l) + 2);
  std::vector<double> w;
  for (int j = 2; j <= 18; ++j) {
    const double lam = std::ldexp(1.0, -j);
    double s = 0.0, p = 1.0;
    pp.psi.derivs(lam, l - 1, buf.data());  // i = 0: orders <= l-1
    for (int q = 0; q <= l - 1; ++q, p *= lam) s += p * std::abs(buf[q]);
    pp.phi.derivs(lam, l, buf.data());      // i = 1: orders <= l
    p = 1.0;
    for (int q = 0; q <= l; ++q, p *= lam) s += p * std::abs(buf[q]);
    w.push_back(s * std::pow(lam, wexp));
  }
  double head = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) return false;
    if (i < 6) head = std::max(head, w[i]);
    if (i + 6 >= w.size()) tail = std::max(tail, w[i]);
  }
  return tail <= head * 1.01 + 1e-12;
}

// ---------------------------------------------------------------------------
// Decay sweeps

namespace {

std::string family_name(const char* kind, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%g", kind, v);
  return buf;
}

}  // namespace

SweepReport verify_decay(const RadialProfile& phi, const RadialProfile& psi,
                         const DimParams& dims, const DecayBound& bd, int br,
                         int bt, const SweepSpec& spec) {
  if (br < 0 || bt < 0 || br + bt != bd.abs_beta)
    throw std::invalid_argument("verify_decay: beta does not match the bound");
  if (bd.abs_beta > bd.l)
    throw std::invalid_argument("verify_decay: |beta| > l");
  if (bd.n != dims.n)
    throw std::invalid_argument("verify_decay: dimension mismatch");
  double eps = 0.0;
  auto take_env = [&](const RadialProfile& f) {
    if (f.is_zero()) return;
    const Envelope& e = f.envelope();
    if (e.l != bd.l || !(e.k == bd.k))
      throw std::invalid_argument(
          "verify_decay: profile envelope does not match the bound");
    eps = e.eps;
  };
  take_env(psi);
  take_env(phi);

  SweepReport rep;
  rep.zero_data = phi.is_zero() && psi.is_zero();

  struct Family {
    std::string name;
    double factor;  // e_minus weight in the predicted slope
    std::vector<SweepPoint> base, fine;
  };
  const std::size_t n0 = spec.points_per_family;
  const std::size_t n1 = std::size_t(double(n0) * spec.refine_factor + 0.5);
  std::vector<Family> fams;
  for (double c : spec.ray_speeds) {
    Family f{family_name("ray t=r*", c), 1.0,
             ray_points(c, spec.ray_t_lo, spec.ray_t_hi, n0),
             ray_points(c, spec.ray_t_lo, spec.ray_t_hi * spec.refine_factor,
                        n1)};
    fams.push_back(std::move(f));
  }
  for (double d : spec.tube_offsets) {
    Family f{family_name("tube t-r=", d), 0.0,
             tube_points(d, spec.tube_r_lo, spec.tube_r_hi, n0),
             tube_points(d, spec.tube_r_lo,
                         spec.tube_r_hi * spec.refine_factor, n1)};
    fams.push_back(std::move(f));
  }

  const PointFn fn = [&](double r, double t) {
    return derivative(phi, psi, dims, br, bt, r, t, spec.eval).value;
  };
  std::vector<double> num0, den0, num1, den1;
  for (Family& f : fams) {
    run_sweep(f.base, fn);
    run_sweep(f.fine, fn);
    for (const SweepPoint& p : f.base) {
      const double b = bound_expr(bd, eps, p.r, p.t);
      rep.points.push_back({p.r, p.t, bd.abs_beta, p.value, b, p.ok});
      if (!p.ok) {
        ++rep.failed_points;
        continue;
      }
      num0.push_back(p.value);
      den0.push_back(b);
    }
    FamilyFit ff;
    ff.name = f.name;
    ff.factor = f.factor;
    ff.predicted = bd.e_plus.value() + f.factor * bd.e_minus.value();
    std::vector<double> xs, ys, ys_raw;
    for (const SweepPoint& p : f.fine) {
      if (!p.ok) {
        ++rep.failed_points;
        continue;
      }
      num1.push_back(p.value);
      den1.push_back(bound_expr(bd, eps, p.r, p.t));
      if (!(std::abs(p.value) > 1e-300)) continue;  // dead sample
      const double bp = bracket(p.t + p.r), bm = bracket(p.t - p.r);
      // tubes probe the <t+r> exponent alone; keep only samples where the
      // two brackets have genuinely separated scales
      if (f.factor == 0.0 && bp < spec.fit_scale_sep * bm) continue;
      xs.push_back(std::log(bp));
      // subtract the known <t-r> content exactly (up to the factor*ln<t+r>
      // share folded into the predicted slope) so bracket transients on the
      // family cannot bias the fitted exponent
      const double y = std::log(std::abs(p.value)) -
                       bd.e_r.value() * std::log(p.r) -
                       bd.e_minus.value() *
                           (std::log(bm) - f.factor * std::log(bp));
      ys_raw.push_back(y);
      ys.push_back(y - std::log(log_factor(bd, p.r, p.t)));
    }
    ff.live = xs.size();
    // The estimate bounds a sup, so fit the upper envelope: derivatives
    // oscillate through zero and the dips in ln|v| would otherwise drag the
    // slope.  Bin consecutive samples and keep the largest per bin.
    const auto envelope = [&](const std::vector<double>& yv) {
      std::vector<double> bx, by;
      for (std::size_t s = 0; s < xs.size(); s += kFitBin) {
        const std::size_t hi = std::min(xs.size(), s + kFitBin);
        std::size_t best = s;
        for (std::size_t w = s + 1; w < hi; ++w)
          if (yv[w] > yv[best]) best = w;
        bx.push_back(xs[best]);
        by.push_back(yv[best]);
      }
      return std::pair(bx, by);
    };
    if (ff.live >= kFitBin * spec.min_fit_points) {
      ff.fitted = true;
      auto [bx, by] = envelope(ys);
      ff.fit = fit_line(bx, by);
      ff.log_divided = bd.log_kind != LogKind::none;
      ff.within_tol =
          std::abs(ff.fit.slope - ff.predicted) <= spec.exponent_tol;
      if (!ff.within_tol && bd.log_kind != LogKind::none) {
        // the data may simply not saturate the log factor; accept the raw
        // power fit as the other edge of the sandwich
        auto [rx, ry] = envelope(ys_raw);
        const LineFit raw = fit_line(rx, ry);
        if (std::abs(raw.slope - ff.predicted) <= spec.exponent_tol) {
          ff.fit = raw;
          ff.log_divided = false;
          ff.within_tol = true;
        }
      }
    }
    rep.fits.push_back(std::move(ff));
  }

  const double c0b = sup_ratio(num0, den0);
  const double c0f = sup_ratio(num1, den1);
  rep.c0 = stability(c0b, c0f, spec.stability_tol);
  rep.empirical_C0 = c0f;

  if (rep.zero_data) {
    double worst = 0.0;
    for (const ReportPoint& p : rep.points)
      worst = std::max(worst, std::abs(p.value));
    rep.pass =
        rep.failed_points == 0 && worst == 0.0 && rep.empirical_C0 == 0.0;
  } else {
    // The stable sup ratio is the certificate that the bound holds; the
    // slope fits check sharpness of the exponent table.  Not every family
    // saturates the bound (e.g. for k > 2(m+a) the <t-r> decay is attained
    // near the cone, not on rays), so demand a witness rather than
    // unanimity.
    bool any_within = false, any_fitted = false;
    for (const FamilyFit& ff : rep.fits) {
      if (!ff.fitted) continue;
      any_fitted = true;
      any_within = any_within || ff.within_tol;
    }
    rep.pass = rep.failed_points == 0 && rep.c0.stable && any_fitted &&
               any_within && rep.empirical_C0 > 0.0;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Integral lemma checks

namespace {

double ts1_integral(double a, double b, double r, double t, double rel) {
  const double lo = std::abs(t - r), hi = t + r;
  auto f = [a, b, r, t](double x, double dlo, double dhi) {
    (void)dhi;
    const double base = t >= r ? dlo : (r - t) + x;
    return std::pow(bracket(x), b) * std::pow(base, a - 1.0);
  };
  return quad::tanh_sinh(f, lo, hi, rel).value;
}

double ts1_bound(double a, double b, double r, double t) {
  const double tp = bracket(t + r), tm = bracket(t - r);
  const double ra = std::pow(r, a);
  if (b > -a) return ra * std::pow(tp, b);
  if (b == -a) return ra * std::pow(tp, -a) * (1.0 + std::log(tp / tm));
  return ra * std::pow(tp, -a) * std::pow(tm, a + b);
}

double ts2_integral(double a, double b, double c, double tau, double rel) {
  auto f = [a, b, c](double x, double dlo, double dhi) {
    (void)dlo;
    return std::pow(x, b) * std::pow(bracket(x), c) * std::pow(dhi, a - 1.0);
  };
  return quad::tanh_sinh(f, 0.0, tau, rel).value;
}

double ts2_bound(double a, double b, double c, double tau) {
  const double s = b + c;
  const double lead = std::pow(tau, a + b);
  if (s > -1.0) return lead * std::pow(bracket(tau), c);
  if (s == -1.0)
    return lead * std::pow(bracket(tau), -b - 1.0) *
           (1.0 + std::log(bracket(tau)));
  return lead * std::pow(bracket(tau), -b - 1.0);
}

}  // namespace

LemmaReport check_ts1(double a, double b, std::size_t samples,
                      std::uint64_t seed) {
  if (!(a > 0.0)) throw std::invalid_argument("check_ts1: need a > 0");
  if (samples < 8) throw std::invalid_argument("check_ts1: too few samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t total = 2 * samples;  // refined set extends the base set
  std::vector<double> nums(total), dens(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    double r = 0.0, t = 0.0;
    switch (idx % 4) {
      case 0:  // generic spread
        r = std::pow(10.0, -1.0 + 3.0 * u01(rng));
        t = std::pow(10.0, -1.0 + 3.5 * u01(rng));
        break;
      case 1:  // just inside the cone
        r = std::pow(10.0, 2.5 * u01(rng));
        t = r * (1.0 + std::pow(10.0, -6.0 + 5.0 * u01(rng)));
        break;
      case 2:  // just outside the cone
        r = std::pow(10.0, 2.5 * u01(rng));
        t = r * (1.0 - std::pow(10.0, -6.0 + 5.0 * u01(rng)));
        break;
      default:  // deep exterior
        r = std::pow(10.0, 2.0 * u01(rng));
        t = r * u01(rng);
        break;
    }
    nums[idx] = ts1_integral(a, b, r, t, 1e-9);
    dens[idx] = ts1_bound(a, b, r, t);
  }
  LemmaReport rep;
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "ts1 a=%g b=%g", a, b);
    rep.name = buf;
  }
  rep.samples = total;
  const std::vector<double> n0(nums.begin(), nums.begin() + samples);
  const std::vector<double> d0(dens.begin(), dens.begin() + samples);
  rep.c = stability(sup_ratio(n0, d0), sup_ratio(nums, dens), 0.10);
  rep.pass = rep.c.stable;
  if (b == -a) {
    // log branch: slide along the cone, regress the normalized integral
    // against the log of the bracket ratio
    std::vector<double> xs, ys;
    for (double rr : logspace(1.0, 1e3, 30)) {
      const double tt = rr + 1e-3;
      xs.push_back(std::log(bracket(tt + rr) / bracket(tt - rr)));
      ys.push_back(ts1_integral(a, b, rr, tt, 1e-9) /
                   (std::pow(rr, a) * std::pow(bracket(tt + rr), -a)));
    }
    const LineFit lf = fit_line(xs, ys);
    rep.log_slope = lf.slope;
    rep.log_slope_checked = true;
    // the normalized integral must grow genuinely linearly in the log
    // variable (the log factor is necessary); the asymptotic slope constant
    // depends on a and the approach to the cone, so accept an O(1) band --
    // exact closed forms are pinned in the unit tests
    const bool slope_ok = lf.slope > 0.4 && lf.slope < 3.0;
    rep.pass = rep.pass && slope_ok;
  }
  return rep;
}

LemmaReport check_ts2(double a, double b, double c, std::size_t samples,
                      std::uint64_t seed) {
  if (!(a > 0.0) || !(b >= 0.0))
    throw std::invalid_argument("check_ts2: need a > 0, b >= 0");
  if (samples < 8) throw std::invalid_argument("check_ts2: too few samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t total = 2 * samples;
  std::vector<double> nums(total), dens(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double tau = std::pow(10.0, -2.0 + 5.0 * u01(rng));  // t - r
    nums[idx] = ts2_integral(a, b, c, tau, 1e-9);
    dens[idx] = ts2_bound(a, b, c, tau);
  }
  LemmaReport rep;
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "ts2 a=%g b=%g c=%g", a, b, c);
    rep.name = buf;
  }
  rep.samples = total;
  const std::vector<double> n0(nums.begin(), nums.begin() + samples);
  const std::vector<double> d0(dens.begin(), dens.begin() + samples);
  rep.c = stability(sup_ratio(n0, d0), sup_ratio(nums, dens), 0.10);
  rep.pass = rep.c.stable;
  if (b + c == -1.0) {
    std::vector<double> xs, ys;
    for (double tau : logspace(1.0, 1e4, 30)) {
      xs.push_back(std::log(bracket(tau)));
      ys.push_back(ts2_integral(a, b, c, tau, 1e-9) /
                   (std::pow(tau, a + b) * std::pow(bracket(tau), -b - 1.0)));
    }
    const LineFit lf = fit_line(xs, ys);
    rep.log_slope = lf.slope;
    rep.log_slope_checked = true;
    // the normalized integral must grow genuinely linearly in the log
    // variable (the log factor is necessary); the asymptotic slope constant
    // depends on a and the approach to the cone, so accept an O(1) band --
    // exact closed forms are pinned in the unit tests
    const bool slope_ok = lf.slope > 0.4 && lf.slope < 3.0;
    rep.pass = rep.pass && slope_ok;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Region majorants

namespace {

// S_ij(lam) = sum_{s=0}^{i+j} lam^{s+1-i} |f^(s)(lam)|
double weighted_data_sum(const RadialProfile& f, int i, int j, double lam,
                         std::vector<double>& buf) {
  const int top = i + j;
  buf.assign(std::size_t(top) + 1, 0.0);
  f.derivs(lam, top, buf.data());
  double s = 0.0, w = std::pow(lam, 1.0 - double(i));
  for (int q = 0; q <= top; ++q, w *= lam) s += w * std::abs(buf[q]);
  return s;
}

double fd_step(double r, double t) {
  return std::min({0.2 * std::abs(r - t), 0.3 * std::min(r, t),
                   0.03 * (1.0 + t)});
}

// Nested Richardson differencing of apply_L: the exterior t < r strip has
// no derived representation, so D^(dr_ct, dt_ct) is built one order at a
// time with per-depth steps (as in the solver's own fallback).
double fd_L(const RadialProfile& f, const DimParams& dims, int dr_ct,
            int dt_ct, double r, double t, const EvalOptions& opts,
            int depth) {
  if (dt_ct == 0 && dr_ct == 0) return apply_L(f, dims, r, t, opts);
  const double h = fd_step(r, t) / double(1 + depth);
  auto d1 = [&](auto&& g) {
    return (4.0 * ((g(0.5 * h) - g(-0.5 * h)) / h) -
            (g(h) - g(-h)) / (2.0 * h)) / 3.0;
  };
  if (dt_ct > 0)
    return d1([&](double dh) {
      return fd_L(f, dims, dr_ct, dt_ct - 1, r, t + dh, opts, depth + 1);
    });
  return d1([&](double dh) {
    return fd_L(f, dims, dr_ct - 1, 0, r + dh, t, opts, depth + 1);
  });
}

double majorant_lhs(const RadialProfile& f, const DimParams& dims, int i,
                    int j, int br, int bt, double r, double t,
                    const EvalOptions& opts) {
  if (t >= r)
    return derived_jet(f, dims, i, j, r, t, br, bt, opts).deriv(0, br, bt);
  return fd_L(f, dims, br, i + bt, r, t, opts, 0);
}

struct MajTerms {
  double a_term = 0.0, b_term = 0.0, boundary = 0.0;
  double total() const { return a_term + b_term + boundary; }
};

MajTerms interior_terms(const RadialProfile& f, const DimParams& dims, int i,
                        int j, int abs_b, double r, double t, double rel) {
  const double a = dims.a.value();
  const int m = dims.m;
  std::vector<double> buf;
  MajTerms out;
  auto fA = [&](double x, double dlo, double dhi) {
    (void)dhi;
    return std::pow(x, double(m - j)) * std::pow(dlo, a - 1.0) *
           weighted_data_sum(f, i, j, x, buf);
  };
  out.a_term = std::pow(r, double(j - abs_b - m) - a) *
               quad::tanh_sinh(fA, t - r, t + r, rel).value;
  if (!dims.odd) {
    auto fB = [&](double x, double dlo, double dhi) {
      (void)dlo;
      return std::pow(x, 2.0 * m) * std::pow(dhi, a - 1.0) *
             weighted_data_sum(f, i, j, x, buf);
    };
    out.b_term = std::pow(r, double(j - abs_b - m)) *
                 std::pow(t - r, double(-j - m) - a) *
                 quad::tanh_sinh(fB, 0.0, t - r, rel).value;
  }
  return out;
}

MajTerms exterior_terms(const RadialProfile& f, const DimParams& dims, int i,
                        int j, int abs_b, double r, double t, double rel) {
  const double a = dims.a.value();
  const int m = dims.m;
  std::vector<double> buf;
  MajTerms out;
  const double lo = std::abs(t - r), hi = t + r;
  auto fA = [&](double x, double dlo, double dhi) {
    (void)dhi;
    const double base = t >= r ? dlo : (r - t) + x;
    return std::pow(x, double(m - abs_b)) * std::pow(base, a - 1.0) *
           weighted_data_sum(f, i, j, x, buf);
  };
  const double rma = std::pow(r, -double(m) - a);
  out.a_term = rma * quad::tanh_sinh(fA, lo, hi, rel).value;
  if (!dims.odd && t > r) {
    auto fB = [&](double x, double dlo, double dhi) {
      (void)dlo;
      return std::pow(x, 2.0 * m) * std::pow(dhi, a - 1.0) *
             weighted_data_sum(f, i, j, x, buf);
    };
    out.b_term = rma * std::pow(t - r, -double(m) - double(abs_b)) *
                 quad::tanh_sinh(fB, 0.0, t - r, rel).value;
  }
  const int top = i + j - 1;  // data boundary terms at both interval ends
  if (top >= 0) {
    std::vector<double> der(std::size_t(top) + 1);
    for (const double lam : {lo, hi}) {
      if (!(lam > 0.0)) continue;  // t == r: the lower end degenerates
      f.derivs(lam, top, der.data());
      for (int s = 0; s <= top; ++s)
        out.boundary +=
            rma *
            std::pow(lam, double(m) + a - double(abs_b) + double(s) + 1.0 -
                              double(i)) *
            std::abs(der[s]);
    }
  }
  return out;
}

}  // namespace

RadialProfile cutoff_scaled(const RadialProfile& f, double s, bool inner) {
  if (!(s > 0.0)) throw std::invalid_argument("cutoff_scaled: need s > 0");
  if (f.is_zero()) return RadialProfile();
  RadialProfile base = f;  // cheap copy, shared call target
  auto fn = [base, s, inner](double lam, int order, double* out) {
    std::vector<double> fd(std::size_t(order) + 1);
    std::vector<double> zd(std::size_t(order) + 1, 0.0);
    base.derivs(lam, order, fd.data());
    const double x = lam / s;
    if (x <= 2.0 + 1e-9) {
      zd[0] = 1.0;  // flat region, all zeta derivatives vanish
    } else if (x >= 2.5 - 1e-9) {
      zd[0] = 0.0;
    } else {
      const JetOrders ords{order, 0, 0};
      Jet u = Jet::variable(0, lam, ords) * (1.0 / s);
      Jet h1 = (-((-(u - 2.5)).reciprocal())).exp();  // exp(-1/(5/2 - u))
      Jet h0 = (-((u - 2.0).reciprocal())).exp();     // exp(-1/(u - 2))
      Jet z = h1 * (h1 + h0).reciprocal();
      for (int q = 0; q <= order; ++q) zd[q] = z.deriv(q, 0, 0);
    }
    if (!inner) {  // complement 1 - zeta
      zd[0] = 1.0 - zd[0];
      for (int q = 1; q <= order; ++q) zd[q] = -zd[q];
    }
    for (int q = order; q >= 0; --q) {  // Leibniz
      double acc = 0.0, ch = 1.0;
      for (int w = 0; w <= q; ++w) {
        acc += ch * fd[w] * zd[q - w];
        ch = ch * double(q - w) / double(w + 1);
      }
      out[q] = acc;
    }
  };
  std::optional<Support> supp;
  if (f.support()) {
    supp = inner ? Support{f.support()->lo,
                           std::min(f.support()->hi, 2.5 * s)}
                 : Support{std::max(f.support()->lo, 2.0 * s),
                           f.support()->hi};
    if (!(supp->lo < supp->hi)) return RadialProfile();  // killed entirely
  }
  return RadialProfile(std::move(fn), f.max_order(), f.envelope(), supp);
}

MajorantReport check_region_majorant(Region region, const RadialProfile& f,
                                     int i, int j, int br, int bt,
                                     const DimParams& dims,
                                     std::size_t samples,
                                     std::uint64_t seed) {
  const int abs_b = br + bt;
  if (i < 0 || i > 1)
    throw std::invalid_argument("check_region_majorant: need i in {0, 1}");
  const int l = f.is_zero() ? j : f.envelope().l;
  if (br < 0 || bt < 0 || j < std::max(i, abs_b) || j > l)
    throw std::invalid_argument(
        "check_region_majorant: need max(i, |beta|) <= j <= l");
  if (samples < 8)
    throw std::invalid_argument("check_region_majorant: too few samples");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::size_t total = 2 * samples;
  const double rel = 1e-8;
  const EvalOptions opts;

  std::vector<double> nums(total), dens(total);
  std::vector<std::pair<double, double>> cut_pts;
  for (std::size_t idx = 0; idx < total; ++idx) {
    double r = 0.0, t = 0.0;
    if (region == Region::interior) {
      r = std::pow(10.0, -0.5 + 1.3 * u01(rng));
      t = 2.0 * r * std::pow(10.0, u01(rng));
    } else {
      r = std::pow(10.0, -0.3 + 1.3 * u01(rng));
      t = 2.0 * r * std::pow(10.0, -1.5 * u01(rng));
    }
    nums[idx] = std::abs(majorant_lhs(f, dims, i, j, br, bt, r, t, opts));
    const MajTerms mt = region == Region::interior
                            ? interior_terms(f, dims, i, j, abs_b, r, t, rel)
                            : exterior_terms(f, dims, i, j, abs_b, r, t, rel);
    dens[idx] = mt.total();
    // compactly supported data: both sides vanish where the cone misses the
    // support, but the numerically differentiated left side leaves roundoff
    // dust; clamp it so 0/0 is recognized
    if (dens[idx] == 0.0 && nums[idx] < 1e-12) nums[idx] = 0.0;
    if (region == Region::exterior && !dims.odd && t > r &&
        cut_pts.size() < 8)
      cut_pts.emplace_back(r, t);
  }
  MajorantReport rep;
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s n=%d i=%d j=%d beta=(%d,%d)",
                  region == Region::interior ? "interior" : "exterior",
                  dims.n, i, j, br, bt);
    rep.name = buf;
  }
  rep.odd = dims.odd;
  rep.samples = total;
  const std::vector<double> n0(nums.begin(), nums.begin() + samples);
  const std::vector<double> d0(dens.begin(), dens.begin() + samples);
  rep.c1 = stability(sup_ratio(n0, d0), sup_ratio(nums, dens), 0.10);
  rep.c2 = dims.odd ? 0.0 : rep.c1.c_refined;
  rep.pass = rep.c1.stable;

  if (region == Region::exterior && !dims.odd && !f.is_zero()) {
    // cutoff split: L f must equal L(zeta_1 f) + L(zeta_2 f)
    double worst = 0.0;
    for (const auto& [rr, tt] : cut_pts) {
      const double sc = tt - rr;
      const double v = apply_L(f, dims, rr, tt, opts);
      const double v1 = apply_L(cutoff_scaled(f, sc, false), dims, rr, tt,
                                opts);
      const double v2 = apply_L(cutoff_scaled(f, sc, true), dims, rr, tt,
                                opts);
      const double scale =
          std::max({std::abs(v), std::abs(v1), std::abs(v2), 1e-12});
      worst = std::max(worst, std::abs(v - v1 - v2) / scale);
    }
    rep.linearity_err = worst;
    rep.linearity_checked = !cut_pts.empty();
    rep.pass = rep.pass && (!rep.linearity_checked || worst <= 1e-6);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Origin behavior

namespace {

OriginReport origin_slope(const std::function<double(double)>& weighted,
                          double r_lo, double r_hi, std::size_t count) {
  OriginReport rep;
  std::vector<double> xs, ys;
  for (double r : logspace(r_lo, r_hi, count)) {
    double w;
    try {
      w = weighted(r);
    } catch (const std::exception&) {
      continue;  // quadrature can stall on the tiny values here; skip
    }
    rep.max_weighted = std::max(rep.max_weighted, w);
    if (w > 1e-300) {
      xs.push_back(std::log(r));
      ys.push_back(std::log(w));
    }
  }
  rep.live = xs.size();
  if (rep.live == 0) {  // region dead (finite propagation speed): vacuous
    rep.pass = true;
    return rep;
  }
  if (rep.live < 4) {
    rep.pass = std::isfinite(rep.max_weighted);
    return rep;
  }
  rep.slope = fit_line(xs, ys).slope;
  // bounded toward r = 0 means the weighted quantity must not grow as r
  // shrinks: slope >= 0 up to fit noise
  rep.pass = std::isfinite(rep.max_weighted) && rep.slope >= -0.05;
  return rep;
}

}  // namespace

OriginReport check_near_origin(const RadialProfile& phi,
                               const RadialProfile& psi,
                               const DimParams& dims, int br, int bt,
                               double t_fixed) {
  const int l = phi.is_zero() ? (psi.is_zero() ? 1 : psi.envelope().l)
                              : phi.envelope().l;
  const double wexp = double(dims.m + br + bt - l);
  EvalOptions opts;
  opts.quad_rel = opts.kernel_rel = 1e-8;
  return origin_slope(
      [&](double r) {
        return std::abs(
                   derivative(phi, psi, dims, br, bt, r, t_fixed, opts)
                       .value) *
               std::pow(r, wexp);
      },
      1.0 / 64.0, 0.5, 10);
}

OriginReport check_kko(const RadialProfile& phi, const RadialProfile& psi,
                       const DimParams& dims, double t_fixed, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("check_kko: need delta > 0");
  const double wexp = double(dims.m) + dims.a.value() - delta;
  EvalOptions opts;
  opts.quad_rel = opts.kernel_rel = 1e-8;
  return origin_slope(
      [&](double r) {
        const double ur =
            derivative(phi, psi, dims, 1, 0, r, t_fixed, opts).value;
        const double ut =
            derivative(phi, psi, dims, 0, 1, r, t_fixed, opts).value;
        return (std::abs(ur) + std::abs(ut)) * std::pow(r, wexp);
      },
      1.0 / 64.0, 0.5, 10);
}

}  // namespace rwave

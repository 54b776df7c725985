#include "rwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwave/jet.hpp"

namespace rwave {

namespace {

// Below this radius the explicit descent formula is replaced by the even
// Taylor series about r = 0 (the formula's 1/r^(2q+1) factors amplify
// the G(t+r) - G(t-r) cancellation by ~ eps / r^(2q+1)).
constexpr double kSeriesSwitch = 0.6;

// Series truncation: terms fall like r^(2(p-q)) / ((p-q)! 2^p), so 36
// extra terms put the tail far below double precision for r < 1.
constexpr int kSeriesTerms = 36;

Jet generator_jet(const Generator& G, double x, double slope, int order) {
  std::vector<double> d(size_t(order) + 1);
  G(x, order, d.data());
  Jet g(JetOrders{order, 0, 0});
  double fact = 1.0, sl = 1.0;
  for (int s = 0; s <= order; ++s) {
    if (s > 0) { fact *= s; sl *= slope; }
    g.coeff(s, 0, 0) = d[size_t(s)] * sl / fact;
  }
  return g;
}

// Univariate jet (in r, to `order`) of the descent solution.
Jet descent_jet(const Generator& G, int q, double r, double t, int order) {
  if (q < 0) throw std::invalid_argument("descent: q >= 0 required");
  if (!(r >= 0.0)) throw std::domain_error("descent: r >= 0 required");
  const JetOrders o{order, 0, 0};
  if (r >= kSeriesSwitch) {
    // w = (G(t+r) - G(t-r)) / r, then q rounds of w -> w' / r.  Each round
    // consumes one derivative; binary jet ops truncate to the smaller box.
    const int top = order + q;
    Jet rj = Jet::variable(0, r, {top, 0, 0});
    Jet rinv = rj.reciprocal();
    Jet w = (generator_jet(G, t + r, 1.0, top + 1) -
             generator_jet(G, t - r, -1.0, top + 1)) *
            rinv;
    for (int s = 0; s < q; ++s) w = w.d_lambda() * rinv;
    Jet out(o);
    for (int s = 0; s <= order; ++s) out.coeff(s, 0, 0) = w.coeff(s, 0, 0);
    return out;
  }
  // u = 2 sum_{p >= q} G^(2p+1)(t) m_p r^(2(p-q)), m_p = 2^q p!/((2p+1)!(p-q)!)
  const int pmax = q + kSeriesTerms;
  std::vector<double> gd(size_t(2 * pmax + 2));
  G(t, 2 * pmax + 1, gd.data());
  std::vector<double> c(size_t(pmax) + 1, 0.0);
  double m = std::ldexp(1.0, q);  // 2^q * q! / (2q+1)! built below
  for (int j = q + 1; j <= 2 * q + 1; ++j) m /= j;
  for (int p = q; p <= pmax; ++p) {
    c[size_t(p)] = 2.0 * gd[size_t(2 * p + 1)] * m;
    m *= double(p + 1) / (double(2 * p + 2) * double(2 * p + 3) *
                          double(p + 1 - q));
  }
  Jet rr = Jet::variable(0, r, o);
  Jet y = rr * rr;
  Jet acc = Jet::constant(c[size_t(pmax)], o);
  for (int p = pmax - 1; p >= q; --p) acc = acc * y + c[size_t(p)];
  return acc;
}

Generator shift_generator(const Generator& G) {
  return [&G](double x, int order, double* out) {
    std::vector<double> buf(size_t(order) + 2);
    G(x, order + 1, buf.data());
    std::copy(buf.begin() + 1, buf.end(), out);
  };
}

}  // namespace

double descent_solution(const Generator& G, int q, double r, double t) {
  return descent_jet(G, q, r, t, 0).value();
}

double descent_dt(const Generator& G, int q, double r, double t) {
  // time enters only through the G arguments, so d_t u is the descent
  // solution generated by G'
  return descent_jet(shift_generator(G), q, r, t, 0).value();
}

double descent_dr(const Generator& G, int q, double r, double t) {
  return descent_jet(G, q, r, t, 1).deriv(1, 0, 0);
}

RadialProfile descent_phi(const Generator& G, int q, int max_order,
                          Envelope env) {
  auto fn = [G, q](double lam, int order, double* out) {
    Jet u = descent_jet(G, q, lam, 0.0, order);
    for (int s = 0; s <= order; ++s) out[s] = u.deriv(s, 0, 0);
  };
  return RadialProfile(fn, max_order, env);
}

RadialProfile descent_psi(const Generator& G, int q, int max_order,
                          Envelope env) {
  auto fn = [G, q](double lam, int order, double* out) {
    Jet u = descent_jet(shift_generator(G), q, lam, 0.0, order);
    for (int s = 0; s <= order; ++s) out[s] = u.deriv(s, 0, 0);
  };
  return RadialProfile(fn, max_order, env);
}

void FDGrid::validate() const {
  if (!(R > 0.0) || !(dr > 0.0) || !(dt > 0.0) || steps < 1)
    throw std::invalid_argument("FDGrid: positive sizes required");
  if (dt > 0.9 * dr + 1e-15)
    throw std::invalid_argument("FDGrid: CFL requires dt <= 0.9 dr");
  if (R < 10.0 * dr)
    throw std::invalid_argument("FDGrid: domain under 10 cells");
}

double FDSolution::at(double r, double t) const {
  const double tmax = grid.dt * double(snaps.size() - 1);
  const size_t nr = snaps.front().size() - 1;
  if (!(r >= 0.0) || !(t >= 0.0) || r > double(nr) * grid.dr + 1e-12 ||
      t > tmax + 1e-12)
    throw std::out_of_range("FDSolution::at outside the grid");
  const size_t k = std::min(size_t(t / grid.dt), snaps.size() - 2);
  const size_t i = std::min(size_t(r / grid.dr), nr - 1);
  const double ft = t / grid.dt - double(k), fr = r / grid.dr - double(i);
  const auto& a = snaps[k];
  const auto& b = snaps[k + 1];
  return (1.0 - ft) * ((1.0 - fr) * a[i] + fr * a[i + 1]) +
         ft * ((1.0 - fr) * b[i] + fr * b[i + 1]);
}

double FDSolution::energy(int k) const {
  if (k < 1 || size_t(k) + 1 >= snaps.size())
    throw std::out_of_range("FDSolution::energy needs 1 <= k <= steps - 1");
  const auto& um = snaps[size_t(k) - 1];
  const auto& uc = snaps[size_t(k)];
  const auto& up = snaps[size_t(k) + 1];
  const size_t nr = uc.size() - 1;
  double e = 0.0;
  for (size_t i = 1; i < nr; ++i) {  // r = 0 carries weight r^(n-1) = 0
    const double ut = (up[i] - um[i]) / (2.0 * grid.dt);
    const double ur = (uc[i + 1] - uc[i - 1]) / (2.0 * grid.dr);
    e += (ut * ut + ur * ur) * std::pow(double(i) * grid.dr, n - 1) * grid.dr;
  }
  return e;
}

FDSolution fd_solve(const RadialProfile& phi, const RadialProfile& psi,
                    const DimParams& dims, const FDGrid& grid) {
  grid.validate();
  const int n = dims.n;
  const size_t nr = size_t(std::lround(grid.R / grid.dr));
  const double dr = grid.dr, dt = grid.dt;
  // Conservative flux form r^(1-n) d_r(r^(n-1) d_r u): self-adjoint in the
  // r^(n-1) weight, so the leapfrog spectrum stays on the negative real
  // axis.  (The naive centered (n-1)/r u_r discretization is non-normal at
  // the first interior point and blows up for n >= 6 at any time step.)
  std::vector<double> cp(nr, 0.0), cm(nr, 0.0);
  for (size_t i = 1; i < nr; ++i) {
    const double wc = std::pow(double(i), n - 1);
    cp[i] = std::pow(double(i) + 0.5, n - 1) / wc;
    cm[i] = std::pow(double(i) - 0.5, n - 1) / wc;
  }
  auto lap = [&](const std::vector<double>& u, size_t i) -> double {
    // i == 0: half-cell balance; matches the L'Hopital limit n u_rr(0)
    if (i == 0) return 2.0 * double(n) * (u[1] - u[0]) / (dr * dr);
    return (cp[i] * (u[i + 1] - u[i]) - cm[i] * (u[i] - u[i - 1])) /
           (dr * dr);
  };
  FDSolution sol;
  sol.grid = grid;
  sol.n = n;
  sol.snaps.reserve(size_t(grid.steps) + 1);

  std::vector<double> u0(nr + 1, 0.0), u1(nr + 1, 0.0);
  for (size_t i = 0; i < nr; ++i) u0[i] = phi.value(double(i) * dr);
  // second-order start: u(dt) = phi + dt psi + dt^2/2 Lap(phi)
  for (size_t i = 0; i < nr; ++i)
    u1[i] = u0[i] + dt * psi.value(double(i) * dr) + 0.5 * dt * dt * lap(u0, i);
  sol.snaps.push_back(u0);
  sol.snaps.push_back(u1);
  for (int k = 1; k < grid.steps; ++k) {
    std::vector<double> u2(nr + 1, 0.0);
    for (size_t i = 0; i < nr; ++i)
      u2[i] = 2.0 * u1[i] - u0[i] + dt * dt * lap(u1, i);
    u0.swap(u1);
    u1.swap(u2);
    sol.snaps.push_back(u1);
  }
  return sol;
}

ResidualStats residual(const std::function<double(double, double)>& u, int n,
                       const std::vector<std::pair<double, double>>& pts,
                       double h) {
  if (!(h > 0.0)) throw std::invalid_argument("residual: h > 0 required");
  ResidualStats st;
  double sumsq = 0.0;
  for (auto [r, t] : pts) {
    if (!(r - h > 0.0) || !(t - h >= 0.0))
      throw std::domain_error("residual: stencil leaves the domain");
    const double utt = (u(r, t + h) - 2.0 * u(r, t) + u(r, t - h)) / (h * h);
    const double urr = (u(r + h, t) - 2.0 * u(r, t) + u(r - h, t)) / (h * h);
    const double ur = (u(r + h, t) - u(r - h, t)) / (2.0 * h);
    const double res = utt - urr - double(n - 1) / r * ur;
    st.max_abs = std::max(st.max_abs, std::abs(res));
    sumsq += res * res;
    ++st.count;
  }
  if (st.count > 0) st.rms = std::sqrt(sumsq / double(st.count));
  return st;
}

}  // namespace rwave

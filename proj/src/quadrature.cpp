#include "rwave/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <queue>
#include <mutex>
#include <stdexcept>

namespace rwave::quad {

namespace detail {

namespace {

// Abscissa x = tanh((pi/2) sinh(u)).  1 -+ x formed from exp(-2v) so the
// distances to the interval ends never cancel.
TSNode make_node(double u, double h) {
  const double v = 1.5707963267948966 * std::sinh(u);
  const double av = std::fabs(v);
  const double e = std::exp(-2.0 * av);
  const double d_far = 2.0 * e / (1.0 + e);   // 1 - |x|
  const double d_near = 2.0 - d_far;          // 1 + |x|
  TSNode n;
  n.x = (v >= 0.0 ? 1.0 : -1.0) * (1.0 - d_far);
  n.dist_lo = (v >= 0.0) ? d_near : d_far;
  n.dist_hi = (v >= 0.0) ? d_far : d_near;
  const double ch = std::cosh(u);
  // w = h (pi/2) cosh(u) sech^2(v), sech^2(v) = 4 e^{-2|v|}/(1+e^{-2|v|})^2
  const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  n.w = h * 1.5707963267948966 * ch * sech2;
  return n;
}

std::mutex ts_mu;
std::vector<std::vector<TSNode>> ts_cache;

}  // namespace

const std::vector<TSNode>& ts_level(int level) {
  std::lock_guard lk(ts_mu);
  while (int(ts_cache.size()) <= level) {
    const int L = int(ts_cache.size());
    const double h = std::ldexp(1.0, -L);
    std::vector<TSNode> nodes;
    // |u| <= 6.1 covers every node whose weight and endpoint distance are
    // representable; beyond that both underflow.
    const double umax = 6.1;
    if (L == 0) {
      for (int k = 0; k * h <= umax; ++k) {
        TSNode n = make_node(k * h, h);
        if (n.w <= 0.0 || n.dist_hi <= 0.0) break;  // underflowed tail
        nodes.push_back(n);
        if (k > 0) nodes.push_back(make_node(-k * h, h));
      }
    } else {
      for (int k = 1; k * h <= umax; k += 2) {
        TSNode n = make_node(k * h, h);
        if (n.w <= 0.0 || n.dist_hi <= 0.0) break;
        nodes.push_back(n);
        nodes.push_back(make_node(-k * h, h));
      }
    }
    ts_cache.push_back(std::move(nodes));
  }
  return ts_cache[size_t(level)];
}

}  // namespace detail

Result tanh_sinh(const TSIntegrand& f, double a, double b, double rel_tol,
                 int max_level) {
  Result r;
  tanh_sinh_engine<double>(
      f, a, b, rel_tol, max_level, 0.0, [](double v) { return std::fabs(v); },
      r.value, r.err_est, r.nodes, r.converged);
  return r;
}

JetResult tanh_sinh_jet(const TSJetIntegrand& f, double a, double b,
                        double rel_tol, JetOrders orders, int max_level) {
  JetResult r;
  tanh_sinh_engine<Jet>(
      f, a, b, rel_tol, max_level, Jet::constant(0.0, orders),
      [](const Jet& j) { return j.max_abs_coeff(); }, r.value, r.err_est,
      r.nodes, r.converged);
  return r;
}

namespace {

// Golub-Welsch for the Jacobi weight (1-x)^A (1+x)^B on [-1,1]:
// nodes are eigenvalues of the tridiagonal recurrence matrix, weights come
// from the Christoffel function evaluated with orthonormal polynomials.
NodesWeights jacobi_rule(double A, double B, int n) {
  if (n < 1) throw std::invalid_argument("jacobi_rule: n < 1");
  Eigen::VectorXd diag(n), sub(n);  // sub[0] unused by Eigen
  auto alpha = [&](int k) -> double {
    if (k == 0) return (B - A) / (A + B + 2.0);
    double s = 2.0 * k + A + B;
    return (B * B - A * A) / (s * (s + 2.0));
  };
  auto beta = [&](int k) -> double {  // k >= 1
    if (k == 1)
      return 4.0 * (A + 1.0) * (B + 1.0) /
             ((A + B + 2.0) * (A + B + 2.0) * (A + B + 3.0));
    double s = 2.0 * k + A + B;
    return 4.0 * k * (k + A) * (k + B) * (k + A + B) /
           (s * s * (s + 1.0) * (s - 1.0));
  };
  for (int k = 0; k < n; ++k) diag[k] = alpha(k);
  sub[0] = 0.0;
  for (int k = 1; k < n; ++k) sub[k] = std::sqrt(beta(k));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.segment(1, n - 1), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("jacobi_rule: eigensolve failed");

  const double mu0 = std::exp((A + B + 1.0) * std::log(2.0) + std::lgamma(A + 1.0) +
                              std::lgamma(B + 1.0) - std::lgamma(A + B + 2.0));
  NodesWeights out;
  out.x.resize(size_t(n));
  out.w.resize(size_t(n));
  for (int i = 0; i < n; ++i) {
    const double x = es.eigenvalues()[i];
    // orthonormal recurrence: p0 = 1/sqrt(mu0),
    // sqrt(beta_{k+1}) p_{k+1} = (x - alpha_k) p_k - sqrt(beta_k) p_{k-1}
    double pm = 0.0, p = 1.0 / std::sqrt(mu0), ssum = p * p;
    for (int k = 0; k + 1 < n; ++k) {
      double bnext = std::sqrt(beta(k + 1));
      double pnext = ((x - alpha(k)) * p - (k > 0 ? std::sqrt(beta(k)) : 0.0) * pm) / bnext;
      pm = p;
      p = pnext;
      ssum += p * p;
    }
    out.x[size_t(i)] = x;
    out.w[size_t(i)] = 1.0 / ssum;
  }
  return out;
}

std::mutex gj_mu;
std::map<std::pair<int, int>, NodesWeights> gj_cache;
std::mutex gc_mu;
std::map<int, NodesWeights> gc_cache;

}  // namespace

const NodesWeights& gauss_jacobi01(int j, int n) {
  if (j < 0) throw std::invalid_argument("gauss_jacobi01: j < 0");
  std::lock_guard lk(gj_mu);
  auto key = std::make_pair(j, n);
  auto it = gj_cache.find(key);
  if (it == gj_cache.end()) {
    // weight nu^(j-1/2) (1-nu)^(-1/2) on [0,1] maps to
    // (1-x)^(-1/2) (1+x)^(j-1/2) on [-1,1] with nu = (1+x)/2 and an
    // overall factor 2^-j.
    NodesWeights nw = jacobi_rule(-0.5, j - 0.5, n);
    const double scale = std::ldexp(1.0, -j);
    for (int i = 0; i < n; ++i) {
      nw.x[size_t(i)] = 0.5 * (1.0 + nw.x[size_t(i)]);
      nw.w[size_t(i)] *= scale;
    }
    it = gj_cache.emplace(key, std::move(nw)).first;
  }
  return it->second;
}

const NodesWeights& gauss_chebyshev(int n) {
  if (n < 1) throw std::invalid_argument("gauss_chebyshev: n < 1");
  std::lock_guard lk(gc_mu);
  auto it = gc_cache.find(n);
  if (it == gc_cache.end()) {
    NodesWeights nw;
    nw.x.resize(size_t(n));
    nw.w.assign(size_t(n), M_PI / n);
    for (int i = 1; i <= n; ++i)
      nw.x[size_t(n - i)] = std::cos((2.0 * i - 1.0) * M_PI / (2.0 * n));
    it = gc_cache.emplace(n, std::move(nw)).first;
  }
  return it->second;
}

namespace {

// QUADPACK dqk15 abscissae/weights on [-1,1] (symmetric half listed).
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759,
                            0.864864423359769, 0.741531185599394,
                            0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979,
                            0.104790010322250, 0.140653259715525,
                            0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct GKPair {
  double kronrod, gauss;
};

GKPair gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), s = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = s * kXgk[i];
    const double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
    k += kWgk[i] * fv;
    if (i % 2 == 1) g += kWg[i / 2] * fv;  // odd indices are the G7 points
  }
  return {k * s, g * s};
}

struct Panel {
  double a, b, val, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace

// Global refinement: always split the panel with the largest error estimate,
// stop once the summed estimate meets the tolerance or the panel budget runs
// out.  Unlike fixed per-panel tolerances this cannot chase the roundoff
// floor down an ever-deepening tree.
Result adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double rel_tol, double abs_floor, int max_panels) {
  Result r;
  if (!(b > a)) {
    r.converged = true;
    return r;
  }
  auto make_panel = [&](double lo, double hi) {
    GKPair p = gk15(f, lo, hi);
    return Panel{lo, hi, p.kronrod, std::fabs(p.kronrod - p.gauss)};
  };
  std::priority_queue<Panel> heap;
  Panel p0 = make_panel(a, b);
  double val = p0.val, err = p0.err;
  int nodes = 15, panels = 1;
  heap.push(p0);
  while (err > rel_tol * std::max(std::fabs(val), abs_floor) &&
         panels < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {  // interval at double resolution
      heap.push(worst);
      break;
    }
    Panel left = make_panel(worst.a, mid), right = make_panel(mid, worst.b);
    val += left.val + right.val - worst.val;
    err += left.err + right.err - worst.err;
    nodes += 30;
    ++panels;
    heap.push(left);
    heap.push(right);
  }
  r.value = val;
  r.err_est = err;
  r.nodes = nodes;
  r.converged = err <= 10.0 * rel_tol * std::max(std::fabs(val), abs_floor);
  return r;
}

}  // namespace rwave::quad

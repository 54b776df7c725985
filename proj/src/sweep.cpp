#include "rwave/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwave {

std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo))
    throw std::invalid_argument("logspace: need 0 < lo <= hi");
  if (count == 0) throw std::invalid_argument("logspace: count == 0");
  std::vector<double> xs(count, lo);
  if (count == 1) return xs;
  const double step = std::log(hi / lo) / double(count - 1);
  for (std::size_t i = 1; i + 1 < count; ++i)
    xs[i] = lo * std::exp(step * double(i));
  xs[count - 1] = hi;  // endpoints exact, interior geometric
  return xs;
}

std::vector<SweepPoint> ray_points(double c, double t_lo, double t_hi,
                                   std::size_t count) {
  if (!(c > 0.0)) throw std::invalid_argument("ray_points: need c > 0");
  std::vector<SweepPoint> pts;
  pts.reserve(count);
  for (double t : logspace(t_lo, t_hi, count))
    pts.push_back({t / c, t, 0.0, true});
  return pts;
}

std::vector<SweepPoint> tube_points(double d, double r_lo, double r_hi,
                                    std::size_t count) {
  if (!(d >= 0.0)) throw std::invalid_argument("tube_points: need d >= 0");
  std::vector<SweepPoint> pts;
  pts.reserve(count);
  for (double r : logspace(r_lo, r_hi, count))
    pts.push_back({r, r + d, 0.0, true});
  return pts;
}

std::vector<SweepPoint> grid_points(double r_lo, double r_hi, std::size_t nr,
                                    double t_lo, double t_hi, std::size_t nt) {
  if (!(r_lo > 0.0) || !(r_hi >= r_lo) || !(t_lo >= 0.0) || !(t_hi >= t_lo))
    throw std::invalid_argument("grid_points: bad extents");
  if (nr == 0 || nt == 0) throw std::invalid_argument("grid_points: empty");
  auto coord = [](double lo, double hi, std::size_t k, std::size_t count) {
    if (count == 1) return lo;
    if (k + 1 == count) return hi;
    return lo + (hi - lo) * double(k) / double(count - 1);
  };
  std::vector<SweepPoint> pts;
  pts.reserve(nr * nt);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < nt; ++k)
      pts.push_back(
          {coord(r_lo, r_hi, i, nr), coord(t_lo, t_hi, k, nt), 0.0, true});
  return pts;
}

namespace {

// Single loop body shared by both drivers: the parallel sweep stays
// bit-identical to the serial one because each point runs exactly this.
inline void eval_point(const PointFn& fn, SweepPoint& p) {
  try {
    p.value = fn(p.r, p.t);
    p.ok = true;
  } catch (const std::exception&) {
    p.value = std::numeric_limits<double>::quiet_NaN();
    p.ok = false;
  }
}

}  // namespace

void run_sweep(std::vector<SweepPoint>& pts, const PointFn& fn) {
  const std::ptrdiff_t n = std::ptrdiff_t(pts.size());
  // dynamic schedule: quadrature cost varies strongly across the light cone
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) eval_point(fn, pts[std::size_t(i)]);
}

void run_sweep_serial(std::vector<SweepPoint>& pts, const PointFn& fn) {
  for (SweepPoint& p : pts) eval_point(fn, p);
}

}  // namespace rwave

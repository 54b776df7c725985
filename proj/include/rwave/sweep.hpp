// Embarrassingly parallel point sweeps over spacetime samples.
//
// A sweep is a flat vector of (r, t) samples; run_sweep evaluates a
// caller-supplied function at every sample, parallel over points.  Each
// iteration writes only its own slot and failures are recorded per point,
// so the parallel run is bit-identical to run_sweep_serial (kept as the
// reference implementation and as the benchmark baseline).
//
// Sample families match the sweep geometry used by the decay harness:
// rays t = c r and tubes t - r = d, both log-spaced in the running
// coordinate, plus a linear cartesian grid for oracle comparisons.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rwave {

// One spacetime sample.  `value` and `ok` are outputs of run_sweep.
struct SweepPoint {
  double r = 0.0;
  double t = 0.0;
  double value = 0.0;
  bool ok = true;  // false iff the evaluator threw at this point
};

using PointFn = std::function<double(double r, double t)>;

// count log-spaced values spanning [lo, hi], endpoints exact.
// Requires 0 < lo <= hi and count >= 1 (count == 1 gives {lo}).
std::vector<double> logspace(double lo, double hi, std::size_t count);

// Samples along the ray t = c r, log-spaced in t over [t_lo, t_hi].
// Requires c > 0 and 0 < t_lo <= t_hi.
std::vector<SweepPoint> ray_points(double c, double t_lo, double t_hi,
                                   std::size_t count);

// Samples along the tube t - r = d, log-spaced in r over [r_lo, r_hi].
// Requires d >= 0 and 0 < r_lo <= r_hi.
std::vector<SweepPoint> tube_points(double d, double r_lo, double r_hi,
                                    std::size_t count);

// nr x nt cartesian grid, linear spacing, r outer / t inner.
// Requires 0 < r_lo <= r_hi, 0 <= t_lo <= t_hi, nr, nt >= 1.
std::vector<SweepPoint> grid_points(double r_lo, double r_hi, std::size_t nr,
                                    double t_lo, double t_hi, std::size_t nt);

// Evaluates fn at every point, parallel over points.  A throwing evaluator
// marks its point ok = false with value NaN and the sweep continues; the
// output bits match run_sweep_serial exactly.
void run_sweep(std::vector<SweepPoint>& pts, const PointFn& fn);

// Serial reference implementation of run_sweep.
void run_sweep_serial(std::vector<SweepPoint>& pts, const PointFn& fn);

}  // namespace rwave

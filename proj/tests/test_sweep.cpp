#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rwave/sweep.hpp"

using namespace rwave;

namespace {

std::uint64_t bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

}  // namespace

TEST_CASE("logspace endpoints, monotonicity, geometric spacing") {
  auto xs = logspace(10.0, 1000.0, 25);
  REQUIRE(xs.size() == 25);
  CHECK(xs.front() == 10.0);
  CHECK(xs.back() == 1000.0);
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
  const double q = xs[1] / xs[0];
  for (std::size_t i = 1; i + 1 < xs.size(); ++i)
    CHECK(xs[i + 1] / xs[i] == doctest::Approx(q).epsilon(1e-12));

  CHECK(logspace(3.0, 3.0, 1) == std::vector<double>{3.0});
  CHECK(logspace(5.0, 5.0, 4).back() == 5.0);
  CHECK_THROWS_AS(logspace(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(logspace(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(logspace(1.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("ray and tube families lie on their loci") {
  auto ray = ray_points(2.0, 10.0, 1000.0, 40);
  REQUIRE(ray.size() == 40);
  CHECK(ray.front().t == 10.0);
  CHECK(ray.back().t == 1000.0);
  for (const auto& p : ray) {
    CHECK(p.t == doctest::Approx(2.0 * p.r).epsilon(1e-15));
    CHECK(p.ok);
  }

  auto tube = tube_points(4.0, 1.0, 1000.0, 40);
  REQUIRE(tube.size() == 40);
  CHECK(tube.front().r == 1.0);
  CHECK(tube.back().r == 1000.0);
  for (const auto& p : tube)
    CHECK(p.t - p.r == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(ray_points(0.0, 1.0, 2.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(tube_points(-1.0, 1.0, 2.0, 5), std::invalid_argument);
}

TEST_CASE("grid is nr x nt with exact corners, r outer") {
  auto g = grid_points(0.5, 4.5, 5, 0.0, 3.0, 4);
  REQUIRE(g.size() == 20);
  CHECK(g[0].r == 0.5);
  CHECK(g[0].t == 0.0);
  CHECK(g[3].t == 3.0);   // t runs inner
  CHECK(g[4].r == 1.5);   // next r block
  CHECK(g.back().r == 4.5);
  CHECK(g.back().t == 3.0);

  auto single = grid_points(2.0, 2.0, 1, 1.0, 1.0, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].r == 2.0);
  CHECK(single[0].t == 1.0);

  CHECK_THROWS_AS(grid_points(0.0, 1.0, 2, 0.0, 1.0, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_points(1.0, 2.0, 0, 0.0, 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("parallel sweep is bit-identical to the serial reference") {
  // uneven per-point cost, nonlinear enough that evaluation order would show
  auto fn = [](double r, double t) {
    double acc = 0.0;
    const int reps = 1 + int(std::fmod(r * 37.0 + t * 11.0, 5.0));
    for (int i = 0; i < reps; ++i)
      acc += std::sin(r * t + double(i)) * std::exp(-0.1 * r) +
             std::cos(t - r) / (1.0 + r * r);
    return acc;
  };
  auto par = grid_points(0.25, 9.75, 37, 0.0, 14.0, 29);
  auto ser = par;
  run_sweep(par, fn);
  run_sweep_serial(ser, fn);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(bits(par[i].value) == bits(ser[i].value));
    CHECK(par[i].ok == ser[i].ok);
  }
}

TEST_CASE("throwing evaluator poisons only its own points") {
  auto fn = [](double r, double t) -> double {
    if (r > 0.99 && t > 0.99) throw std::runtime_error("no");
    return r + t;
  };
  auto pts = grid_points(0.5, 1.5, 3, 0.5, 1.5, 3);
  auto ref = pts;
  run_sweep(pts, fn);
  run_sweep_serial(ref, fn);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].ok == ref[i].ok);
    if (!pts[i].ok) {
      ++bad;
      CHECK(std::isnan(pts[i].value));
    } else {
      CHECK(pts[i].value == pts[i].r + pts[i].t);
    }
  }
  CHECK(bad == 4);  // the (r, t) in {1.0, 1.5} x {1.0, 1.5} corner
}

TEST_CASE("empty sweep is a no-op") {
  std::vector<SweepPoint> none;
  run_sweep(none, [](double, double) { return 1.0; });
  CHECK(none.empty());
}

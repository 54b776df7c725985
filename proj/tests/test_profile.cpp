#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "rwave/profile.hpp"

using namespace rwave;

namespace {

// f(lam) = exp(-lam), all derivatives available.
RadialProfile exp_profile(int max_order = 8) {
  return RadialProfile(
      [](double lam, int order, double* out) {
        double e = std::exp(-lam);
        for (int s = 0; s <= order; ++s) {
          out[s] = e;
          e = -e;
        }
      },
      max_order, Envelope{1.0, Rational(0), 1});
}

}  // namespace

TEST_CASE("zero profile") {
  RadialProfile z;
  CHECK(z.is_zero());
  CHECK(z.value(1.5) == 0.0);
  CHECK(z.deriv(1.5, 3) == 0.0);
  double out[4];
  z.derivs(0.7, 3, out);
  for (int s = 0; s <= 3; ++s) CHECK(out[s] == 0.0);
  Jet j = z.lift(1.0, {2, 1, 0});
  CHECK(j.max_abs_coeff() == 0.0);
}

TEST_CASE("derivatives and support") {
  RadialProfile f(
      [](double lam, int order, double* out) {
        out[0] = lam * lam * lam;
        if (order >= 1) out[1] = 3.0 * lam * lam;
        if (order >= 2) out[2] = 6.0 * lam;
        if (order >= 3) out[3] = 6.0;
      },
      3, Envelope{2.0, Rational(1, 2), 1}, Support{1.0, 2.0});
  CHECK(f.value(1.5) == doctest::Approx(3.375));
  CHECK(f.deriv(1.5, 2) == doctest::Approx(9.0));
  CHECK(f.value(0.5) == 0.0);   // outside support
  CHECK(f.deriv(2.5, 1) == 0.0);
  CHECK(f.envelope().eps == 2.0);
  CHECK(f.envelope().k == Rational(1, 2));
  CHECK_THROWS_AS(f.deriv(1.5, 4), std::invalid_argument);
}

TEST_CASE("lift produces the Taylor coefficients of f in lambda") {
  RadialProfile f = exp_profile();
  Jet j = f.lift(0.8, {3, 1, 2});
  const double e = std::exp(-0.8);
  CHECK(j.value() == doctest::Approx(e));
  CHECK(j.coeff(1, 0, 0) == doctest::Approx(-e));
  CHECK(j.coeff(2, 0, 0) == doctest::Approx(e / 2.0));
  CHECK(j.coeff(3, 0, 0) == doctest::Approx(-e / 6.0));
  // nothing in the r or t directions
  CHECK(j.coeff(0, 1, 0) == 0.0);
  CHECK(j.coeff(1, 0, 1) == 0.0);
  CHECK(j.coeff(2, 1, 2) == 0.0);
}

TEST_CASE("lift composes with jet arithmetic as d/dlam") {
  RadialProfile f = exp_profile();
  // (lam^2 * f)' at lam0, via jets vs. by hand
  const double lam0 = 1.3;
  Jet lj = Jet::variable(0, lam0, {2, 0, 0});
  Jet g = lj * lj * f.lift(lam0, {2, 0, 0});
  const double e = std::exp(-lam0);
  CHECK(g.deriv(1, 0, 0) ==
        doctest::Approx(2.0 * lam0 * e - lam0 * lam0 * e).epsilon(1e-12));
}

TEST_CASE("constructor validation") {
  auto fn = [](double, int, double* out) { out[0] = 1.0; };
  CHECK_THROWS_AS(RadialProfile(nullptr, 2, Envelope{}), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(fn, 0, Envelope{}), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(fn, 2, Envelope{0.0, Rational(0), 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(fn, 2, Envelope{1.0, Rational(-1), 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(fn, 2, Envelope{1.0, Rational(0), 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile(fn, 2, Envelope{}, Support{2.0, 1.0}),
                  std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rwave/jet.hpp"
#include "rwave/rng.hpp"
#include "testutil.hpp"

using namespace rwave;

TEST_CASE("jet arithmetic: product with reciprocal is the unit jet") {
  JetOrders o{2, 2, 2};
  Jet lam = Jet::variable(0, 1.3, o), r = Jet::variable(1, 0.7, o),
      t = Jet::variable(2, 2.1, o);
  Jet a = lam * lam + r * t * 3.0 + 1.0;
  Jet unit = a * a.reciprocal();
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k <= 2; ++k) {
        double want = (i == 0 && j == 0 && k == 0) ? 1.0 : 0.0;
        CHECK(unit.coeff(i, j, k) == doctest::Approx(want).epsilon(1e-13));
      }
}

TEST_CASE("jet pow: square of the half power returns the jet") {
  JetOrders o{2, 1, 1};
  Jet lam = Jet::variable(0, 0.9, o), r = Jet::variable(1, 1.4, o);
  Jet a = lam + r * r + 0.5;
  Jet b = a.pow(0.5);
  Jet sq = b * b;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 1; ++j)
      CHECK(sq.coeff(i, j, 0) == doctest::Approx(a.coeff(i, j, 0)).epsilon(1e-13));
}

TEST_CASE("jet exp matches derivative structure") {
  JetOrders o{3, 0, 0};
  Jet lam = Jet::variable(0, 0.4, o);
  Jet e = (lam * 2.0).exp();  // exp(2 lambda): d^i = 2^i exp(2 lambda)
  for (int i = 0; i <= 3; ++i)
    CHECK(e.deriv(i, 0, 0) ==
          doctest::Approx(std::pow(2.0, i) * std::exp(0.8)).epsilon(1e-13));
}

TEST_CASE("z endpoint values") {
  double r = 0.8, t = 2.3;
  CHECK(z_value(t + r, r, t) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z_value(t - r, r, t) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(z_value(1.0, 1.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // at t = 0, z = (lambda^2 + r^2) / (2 r lambda) >= 1
  Rng rng(7);
  for (int q = 0; q < 50; ++q) {
    double lam = rng.uniform(0.05, 5.0), rr = rng.uniform(0.05, 5.0);
    CHECK(z_value(lam, rr, 0.0) >= 1.0);
  }
}

TEST_CASE("z_jet derivatives agree with finite differences") {
  Rng rng(11);
  for (int q = 0; q < 20; ++q) {
    double lam = rng.uniform(0.9, 2.8), r = rng.uniform(0.9, 2.8),
           t = rng.uniform(0.9, 2.8);
    Jet zj = z_jet(lam, r, t, {2, 2, 2});
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2 - i; ++j)
        for (int k = 0; k <= 2 - i - j; ++k) {
          double fd = testutil::fd_partial(z_value, i, j, k, lam, r, t, 0.004);
          CHECK(zj.deriv(i, j, k) ==
                doctest::Approx(fd).epsilon(1e-8).scale(1.0));
        }
  }
}

TEST_CASE("first lambda-derivative closed form") {
  Rng rng(13);
  for (int q = 0; q < 20; ++q) {
    double lam = rng.uniform(0.3, 3.0), r = rng.uniform(0.3, 3.0),
           t = rng.uniform(0.3, 3.0);
    double want = (lam * lam + t * t - r * r) / (2 * r * lam * lam);
    CHECK(z_jet(lam, r, t, {1, 0, 0}).deriv(1, 0, 0) ==
          doctest::Approx(want).epsilon(1e-13));
    CHECK(dlambda_z_value(lam, r, t) == doctest::Approx(want).epsilon(1e-15));
    CHECK(dlambda_z_jet(lam, r, t, {0, 0, 0}).value() ==
          doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("higher lambda-derivatives: d^i z = (-1)^(i+1) (i!/2) (t^2-r^2) / (r lambda^(i+1))") {
  // The constant is pinned by jet arithmetic itself: z = lambda/(2r) +
  // (r^2-t^2)/(2r) * lambda^(-1), so all derivatives past the first hit
  // only the lambda^(-1) term.
  Rng rng(17);
  for (int q = 0; q < 20; ++q) {
    double lam = rng.uniform(0.4, 2.5), r = rng.uniform(0.4, 2.5),
           t = rng.uniform(0.4, 2.5);
    Jet zj = z_jet(lam, r, t, {5, 0, 0});
    for (int i = 2; i <= 5; ++i) {
      double fact = 1.0;
      for (int u = 2; u <= i; ++u) fact *= u;
      double sign = (i % 2 == 0) ? -1.0 : 1.0;
      double want = sign * (fact / 2.0) * (t * t - r * r) / (r * std::pow(lam, i + 1));
      CHECK(zj.deriv(i, 0, 0) == doctest::Approx(want).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("inverse lambda-derivative jet") {
  // spot value 2 r lambda^2 / (lambda^2 + t^2 - r^2) at (1, 1, 2)
  CHECK(inv_dlambda_z_jet(1.0, 1.0, 2.0, {0, 0, 0}).value() ==
        doctest::Approx(0.5).epsilon(1e-15));
  // product with the derivative jet is the unit jet
  Jet p = inv_dlambda_z_jet(1.1, 0.8, 1.9, {2, 1, 1}) *
          dlambda_z_jet(1.1, 0.8, 1.9, {2, 1, 1});
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k)
        CHECK(p.coeff(i, j, k) ==
              doctest::Approx(i == 0 && j == 0 && k == 0 ? 1.0 : 0.0)
                  .epsilon(1e-12).scale(1.0));
  // lambda^2 + t^2 - r^2 == 0 exactly (3-4-5 triple, a t < r point)
  CHECK_THROWS(inv_dlambda_z_jet(3.0, 5.0, 4.0, {0, 0, 0}));
}

TEST_CASE("factored light-cone combinations match z") {
  Rng rng(19);
  for (int q = 0; q < 20; ++q) {
    double r = rng.uniform(0.3, 2.0), t = rng.uniform(0.3, 2.0) + r,
           lam = rng.uniform(0.2, 4.0);
    JetOrders o{1, 1, 1};
    Jet zp1 = z_jet(lam, r, t, o) + 1.0;
    Jet opz = one_plus_z_jet(lam, r, t, o);
    Jet omz = one_minus_z_jet(lam, r, t, o);
    Jet moz = minus_one_minus_z_jet(lam, r, t, o);
    for (int i = 0; i <= 1; ++i)
      for (int j = 0; j <= 1; ++j)
        for (int k = 0; k <= 1; ++k) {
          CHECK(opz.coeff(i, j, k) ==
                doctest::Approx(zp1.coeff(i, j, k)).epsilon(1e-10).scale(1.0));
          CHECK((omz + zp1).coeff(i, j, k) ==
                doctest::Approx(i + j + k == 0 ? 2.0 : 0.0).epsilon(1e-10).scale(1.0));
          CHECK((moz + zp1).coeff(i, j, k) ==
                doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
        }
  }
}

TEST_CASE("factored forms take exact endpoint offsets") {
  // lambda sits 1e-12 above t - r; the naive 1+z loses most digits while
  // the factored form keeps full precision.
  double r = 1.0, t = 3.0, g = 1e-12, lam = (t - r) + g;
  double want = (r + t + lam) * g / (2 * r * lam);
  Jet opz = one_plus_z_jet(lam, r, t, {0, 0, 0}, g);
  CHECK(opz.value() == doctest::Approx(want).epsilon(1e-14));
  double e = 1e-12, lam2 = (t - r) - e;
  Jet moz = minus_one_minus_z_jet(lam2, r, t, {0, 0, 0}, e);
  CHECK(moz.value() ==
        doctest::Approx(e * (t + r + lam2) / (2 * r * lam2)).epsilon(1e-14));
}

TEST_CASE("jet order bookkeeping") {
  Jet a = Jet::constant(2.0, {1, 0, 0});
  CHECK_THROWS(a.d_r());
  CHECK_NOTHROW(a.d_lambda());
  CHECK_THROWS(a.d_lambda().d_lambda());
  CHECK_THROWS(Jet::constant(0.0, {1, 1, 1}).reciprocal());
  // binary ops truncate to the common box
  Jet b = Jet::variable(0, 1.0, {3, 1, 0});
  Jet c = Jet::variable(1, 2.0, {1, 2, 0});
  Jet s = b + c;
  CHECK(s.orders() == JetOrders{1, 1, 0});
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwave/polynomials.hpp"

using namespace rwave;
using namespace rwave::poly;

namespace {

// Oracle: Legendre values by the Bonnet three-term recurrence, independent
// of the Rodrigues expansion used by the implementation.
double legendre_recurrence(int m, double x) {
  double p0 = 1.0, p1 = x;
  if (m == 0) return p0;
  for (int k = 1; k < m; ++k) {
    double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

TEST_CASE("legendre matches recurrence oracle") {
  for (int m = 0; m <= 16; ++m)
    for (double x = -1.0; x <= 1.0; x += 0.125)
      CHECK(legendre(m, x) == doctest::Approx(legendre_recurrence(m, x)).epsilon(1e-12));
}

TEST_CASE("legendre spot values") {
  CHECK(legendre(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
  for (int m = 0; m <= 16; ++m) {
    CHECK(legendre_poly(m).eval_exact(Rational(1)) == Rational(1));
    CHECK(legendre_poly(m).eval_exact(Rational(-1)) == Rational(m % 2 ? -1 : 1));
  }
}

TEST_CASE("tchebyshev matches cos(m acos x) oracle") {
  for (int m = 1; m <= 16; ++m)
    for (double x = -1.0; x <= 1.0; x += 0.0625)
      CHECK(tchebyshev(m, x) ==
            doctest::Approx(std::cos(m * std::acos(x))).epsilon(1e-10));
}

TEST_CASE("tchebyshev spot values and domain") {
  CHECK(tchebyshev_poly(2).exact() ==
        std::vector<Rational>{Rational(-1), Rational(0), Rational(2)});
  for (int m = 1; m <= 16; ++m)
    CHECK(tchebyshev_poly(m).eval_exact(Rational(1)) == Rational(1));
  CHECK_THROWS(tchebyshev(3, 1.5));
  CHECK_THROWS(tchebyshev(3, -1.0001));
}

TEST_CASE("truncated family: j = 0 recovers legendre exactly") {
  for (int m = 0; m <= 16; ++m)
    CHECK(truncated_poly(0, m).exact() == legendre_poly(m).exact());
}

TEST_CASE("truncated family: P_jm is the derivative of P_(j+1)m") {
  for (int m = 1; m <= 8; ++m)
    for (int j = 0; j < m; ++j)
      CHECK(truncated_poly(j + 1, m).derivative().exact() ==
            truncated_poly(j, m).exact());
}

TEST_CASE("truncated family: vanishing of order exactly j at both endpoints") {
  for (int m = 1; m <= 8; ++m)
    for (int j = 0; j <= m; ++j) {
      for (int pm = -1; pm <= 1; pm += 2) {
        Polynomial p = truncated_poly(j, m);
        for (int s = 0; s < j; ++s) {
          CHECK(p.eval_exact(Rational(pm)) == Rational(0));
          p = p.derivative();
        }
        CHECK(p.eval_exact(Rational(pm)) != Rational(0));
      }
    }
}

TEST_CASE("truncated spot value: P_mm = (x^2-1)^m / (2^m m!)") {
  CHECK(truncated_poly(2, 2).exact() ==
        std::vector<Rational>{Rational(1, 8), Rational(0), Rational(-1, 4),
                              Rational(0), Rational(1, 8)});
}

TEST_CASE("degree cap") {
  CHECK_THROWS(legendre(17, 0.0));
  CHECK_THROWS(tchebyshev(17, 0.0));
  CHECK_THROWS(truncated_P(0, 17, 0.0));
  CHECK_THROWS(truncated_P(3, 2, 0.0));
  CHECK_NOTHROW(legendre(16, 0.3));
  CHECK_NOTHROW(tchebyshev(16, 0.3));
  CHECK_NOTHROW(truncated_P(16, 16, 0.3));
}

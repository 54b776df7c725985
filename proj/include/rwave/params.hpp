#pragma once
// Dimension parameters and global tolerances for the radial wave solver.
//
// Everything downstream keys on the pair (a, m) attached to the space
// dimension n >= 4:
//   odd n:  a = 1,   m = (n-3)/2
//   even n: a = 1/2, m = (n-2)/2
// so that a + m = (n-1)/2 holds exactly.  a and decay rates k are kept as
// exact rationals: estimate-case selection compares k against m+a and
// 2(m+a) and those comparisons must not suffer rounding.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rwave {

// Minimal exact rational on int64.  Values stay tiny (dimension parameters,
// decay rates, exponent bookkeeping), so no overflow protection beyond
// normalization is needed.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  // Accepts "3", "-3/2", "1.5", "-0.25".
  static Rational parse(const std::string& s);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return double(num_) / double(den_); }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  bool is_integer() const { return den_ == 1; }
  // Largest integer <= value, exact.
  std::int64_t floor() const;

  std::string str() const;

 private:
  std::int64_t num_, den_;  // den_ > 0, gcd(|num_|, den_) == 1
  void normalize();
};

// (a, m) for dimension n plus derived conveniences.
struct DimParams {
  int n = 0;
  Rational a;     // 1 (odd n) or 1/2 (even n)
  int m = 0;      // >= 1
  bool odd = false;

  Rational m_plus_a() const { return Rational(m) + a; }      // == (n-1)/2
  double half_n_minus_1() const { return m_plus_a().value(); }
};

// Throws std::invalid_argument for n < 4.
DimParams dim_params(int n);

// <x> = 1 + |x|.
double bracket(double x);

// Pinned numerical tolerances.  rep_eq_tol >= quad_rel is required: the
// representation-equivalence checks cannot be tighter than the quadrature
// that feeds them.
struct Tolerances {
  double quad_rel = 1e-10;     // relative target for every quadrature
  double rep_eq_tol = 1e-7;    // representation equivalence, relative
  double exponent_tol = 0.1;   // fitted decay exponent vs. predicted

  void validate() const {
    if (rep_eq_tol < quad_rel)
      throw std::invalid_argument("rep_eq_tol must be >= quad_rel");
  }
};

}  // namespace rwave

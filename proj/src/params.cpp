#include "rwave/params.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace rwave {

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) { num_ = -num_; den_ = -den_; }
  std::int64_t g = std::gcd(std::llabs(num_), den_);
  if (g > 1) { num_ /= g; den_ /= g; }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::int64_t n = std::stoll(s.substr(0, slash));
    std::int64_t d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(s));
  // Decimal literal: scale by a power of ten, exactly.
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::int64_t frac_len = std::int64_t(s.size() - dot - 1);
  if (frac_len > 15) throw std::invalid_argument("Rational: too many decimals");
  std::int64_t den = 1;
  for (std::int64_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(std::stoll(digits), den);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}
bool Rational::operator<(const Rational& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

DimParams dim_params(int n) {
  if (n < 4) throw std::invalid_argument("dim_params: need n >= 4");
  DimParams d;
  d.n = n;
  d.odd = (n % 2 != 0);
  if (d.odd) {
    d.a = Rational(1);
    d.m = (n - 3) / 2;
  } else {
    d.a = Rational(1, 2);
    d.m = (n - 2) / 2;
  }
  return d;
}

double bracket(double x) { return 1.0 + std::fabs(x); }

}  // namespace rwave

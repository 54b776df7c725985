#include "rwave/polynomials.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rwave::poly {

using big = boost::multiprecision::cpp_int;

namespace {

// Polynomial over exact big rationals, coefficient i of x^i as num[i]/den.
// A single shared denominator keeps the Rodrigues bookkeeping simple.
struct BigPoly {
  std::vector<big> num;
  big den = 1;
};

BigPoly derivative(const BigPoly& p) {
  BigPoly d;
  d.den = p.den;
  if (p.num.size() <= 1) { d.num = {big(0)}; return d; }
  d.num.resize(p.num.size() - 1);
  for (size_t i = 1; i < p.num.size(); ++i) d.num[i - 1] = p.num[i] * int(i);
  return d;
}

// (x^2 - 1)^m, integer coefficients.
BigPoly x2m1_pow(int m) {
  BigPoly p;
  p.num.assign(size_t(2 * m + 1), big(0));
  big binom = 1;  // C(m, i)
  for (int i = 0; i <= m; ++i) {
    // coefficient of x^(2(m-i)) is C(m,i) (-1)^i
    p.num[size_t(2 * (m - i))] = (i % 2 ? -binom : binom);
    binom = binom * (m - i) / (i + 1);
  }
  return p;
}

std::vector<Rational> to_exact(const BigPoly& p) {
  std::vector<Rational> out(p.num.size());
  for (size_t i = 0; i < p.num.size(); ++i) {
    big n = p.num[i], d = p.den;
    big g = boost::multiprecision::gcd(boost::multiprecision::abs(n), d);
    if (g > 1) { n /= g; d /= g; }
    if (n < std::numeric_limits<std::int64_t>::min() ||
        n > std::numeric_limits<std::int64_t>::max() ||
        d > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("polynomial coefficient exceeds int64");
    out[i] = Rational(n.convert_to<std::int64_t>(), d.convert_to<std::int64_t>());
  }
  while (out.size() > 1 && out.back() == Rational(0)) out.pop_back();
  return out;
}

void check_m(int m) {
  if (m > kMaxDegreeParam) throw std::invalid_argument("polynomial family: m > 16");
}

Polynomial build_truncated(int j, int m) {
  check_m(m);
  if (m < 0 || j < 0 || j > m) throw std::invalid_argument("truncated_P: need 0 <= j <= m");
  BigPoly p = x2m1_pow(m);
  for (int s = 0; s < m - j; ++s) p = derivative(p);
  big fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  p.den = (big(1) << m) * fact;
  return Polynomial(to_exact(p));
}

Polynomial build_legendre(int m) {
  check_m(m);
  if (m < 0) throw std::invalid_argument("legendre: need m >= 0");
  return build_truncated(0, m);
}

Polynomial build_tchebyshev(int m) {
  check_m(m);
  if (m < 1) throw std::invalid_argument("tchebyshev: need m >= 1");
  // (d/dx)^m (1-x^2)^(m-1/2) = h_m(x) (1-x^2)^(-1/2) with the recursion
  //   h_{s+1} = h_s'(x)(1-x^2) - (2e-1) x h_s,  e = m-s,
  // carried out in integer arithmetic; the sqrt factor cancels exactly.
  BigPoly h;
  h.num = {big(1)};
  for (int e = m; e >= 1; --e) {
    BigPoly hp = derivative(h);
    BigPoly next;
    next.num.assign(h.num.size() + 1, big(0));
    for (size_t i = 0; i < hp.num.size(); ++i) {
      if (hp.num[i] == 0) continue;
      next.num[i] += hp.num[i];       // h' * 1
      next.num[i + 2] -= hp.num[i];   // h' * (-x^2); in range whenever hp[i] != 0
    }
    for (size_t i = 0; i < h.num.size(); ++i)
      next.num[i + 1] -= big(2 * e - 1) * h.num[i];   // -(2e-1) x h
    h = next;
  }
  big dfact = 1;
  for (int i = 2 * m - 1; i >= 1; i -= 2) dfact *= i;
  h.den = (m % 2 ? -dfact : dfact);
  if (h.den < 0) { h.den = -h.den; for (auto& c : h.num) c = -c; }
  return Polynomial(to_exact(h));
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : exact_(std::move(coeffs)) {
  if (exact_.empty()) exact_ = {Rational(0)};
  dbl_.resize(exact_.size());
  for (size_t i = 0; i < exact_.size(); ++i) dbl_[i] = exact_[i].value();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (size_t i = dbl_.size(); i-- > 0;) acc = acc * x + dbl_[i];
  return acc;
}

Rational Polynomial::eval_exact(const Rational& x) const {
  Rational acc(0);
  for (size_t i = exact_.size(); i-- > 0;) acc = acc * x + exact_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (exact_.size() <= 1) return Polynomial({Rational(0)});
  std::vector<Rational> d(exact_.size() - 1);
  for (size_t i = 1; i < exact_.size(); ++i) d[i - 1] = exact_[i] * Rational(std::int64_t(i));
  return Polynomial(std::move(d));
}

namespace {
std::mutex cache_mu;
std::map<int, Polynomial> legendre_cache, tcheb_cache;
std::map<std::pair<int, int>, Polynomial> trunc_cache;
}  // namespace

const Polynomial& legendre_poly(int m) {
  std::lock_guard lk(cache_mu);
  auto it = legendre_cache.find(m);
  if (it == legendre_cache.end()) it = legendre_cache.emplace(m, build_legendre(m)).first;
  return it->second;
}

const Polynomial& tchebyshev_poly(int m) {
  std::lock_guard lk(cache_mu);
  auto it = tcheb_cache.find(m);
  if (it == tcheb_cache.end()) it = tcheb_cache.emplace(m, build_tchebyshev(m)).first;
  return it->second;
}

const Polynomial& truncated_poly(int j, int m) {
  std::lock_guard lk(cache_mu);
  auto key = std::make_pair(j, m);
  auto it = trunc_cache.find(key);
  if (it == trunc_cache.end()) it = trunc_cache.emplace(key, build_truncated(j, m)).first;
  return it->second;
}

double legendre(int m, double x) { return legendre_poly(m)(x); }

double tchebyshev(int m, double x) {
  if (std::fabs(x) > 1.0 + 1e-9)
    throw std::invalid_argument("tchebyshev: argument outside [-1, 1]");
  return tchebyshev_poly(m)(x);
}

double truncated_P(int j, int m, double x) { return truncated_poly(j, m)(x); }

}  // namespace rwave::poly

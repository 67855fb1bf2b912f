#include "epstein/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "intmath.hpp"

namespace epstein {

RootOfUnity::RootOfUnity(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("RootOfUnity: denominator must be positive");
  num = detail::mod_floor(num, den);
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

RootOfUnity RootOfUnity::conj() const { return RootOfUnity(-num_, den_); }

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
  return RootOfUnity(static_cast<std::int64_t>((static_cast<__int128>(num_) * k) % den_), den_);
}

std::complex<double> RootOfUnity::value() const {
  // Exact special cases keep +-1, +-i free of rounding.
  if (num_ == 0) return {1.0, 0.0};
  if (den_ == 2) return {-1.0, 0.0};
  if (den_ == 4) return num_ == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return std::polar(1.0, angle);
}

RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y) {
  const std::int64_t l = std::lcm(x.den_, y.den_);
  return RootOfUnity(x.num_ * (l / x.den_) + y.num_ * (l / y.den_), l);
}

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of a by monic b.
Poly poly_div_exact(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return Poly{0};
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t coef = a[i];
    q[i - db] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= coef * b[j];
  }
  return q;
}

// Remainder of a modulo monic b.
Poly poly_mod(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t coef = a[i];
    if (coef == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= coef * b[j];
  }
  a.resize(std::min(a.size(), db));
  return a;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
  static std::mutex mu;
  static std::map<std::int64_t, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, p);
  return p;
}

CyclotomicInt::CyclotomicInt(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("CyclotomicInt: order must be >= 1");
  coeff_.assign(static_cast<std::size_t>(order), 0);
}

CyclotomicInt CyclotomicInt::from_root(std::int64_t order, const RootOfUnity& z,
                                       std::int64_t multiplicity) {
  CyclotomicInt x(order);
  x.add(z, multiplicity);
  return x;
}

CyclotomicInt& CyclotomicInt::add(const RootOfUnity& z, std::int64_t multiplicity) {
  const std::int64_t n = order();
  if (n % z.den() != 0) {
    throw std::invalid_argument("CyclotomicInt::add: root order does not divide ring order");
  }
  coeff_[static_cast<std::size_t>(z.num() * (n / z.den()))] += multiplicity;
  return *this;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  if (o.order() != order()) throw std::invalid_argument("CyclotomicInt: order mismatch");
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
  if (o.order() != order()) throw std::invalid_argument("CyclotomicInt: order mismatch");
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(std::int64_t k) {
  for (auto& c : coeff_) c *= k;
  return *this;
}

CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y) {
  if (x.order() != y.order()) throw std::invalid_argument("CyclotomicInt: order mismatch");
  const std::size_t n = x.coeff_.size();
  CyclotomicInt out(static_cast<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (x.coeff_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y.coeff_[j] == 0) continue;
      out.coeff_[(i + j) % n] += x.coeff_[i] * y.coeff_[j];
    }
  }
  return out;
}

bool CyclotomicInt::is_zero() const {
  const Poly r = poly_mod(coeff_, cyclotomic_polynomial(order()));
  for (auto c : r) {
    if (c != 0) return false;
  }
  return true;
}

bool CyclotomicInt::equals_integer(std::int64_t k) const {
  CyclotomicInt d = *this;
  d.coeff_[0] -= k;
  return d.is_zero();
}

std::complex<double> CyclotomicInt::to_complex() const {
  std::complex<double> s{0.0, 0.0};
  const std::int64_t n = order();
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    s += static_cast<double>(coeff_[i]) * RootOfUnity(static_cast<std::int64_t>(i), n).value();
  }
  return s;
}

}  // namespace epstein

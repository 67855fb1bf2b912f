#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace epstein {

/// Exact root of unity exp(2 pi i num / den), kept with 0 <= num < den and
/// gcd(num, den) == 1.
class RootOfUnity {
 public:
  constexpr RootOfUnity() = default;
  RootOfUnity(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  /// True for +1 and -1.
  bool is_real() const noexcept { return den_ <= 2; }
  bool is_one() const noexcept { return num_ == 0; }

  RootOfUnity conj() const;
  RootOfUnity pow(std::int64_t k) const;
  std::complex<double> value() const;

  friend RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y);
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element of Z[zeta_n] stored as an integer combination of the powers
/// zeta_n^0 .. zeta_n^{n-1}. The representation is not unique; equality and
/// zero tests reduce modulo the n-th cyclotomic polynomial.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(std::int64_t order = 1);

  static CyclotomicInt from_root(std::int64_t order, const RootOfUnity& z,
                                 std::int64_t multiplicity = 1);

  std::int64_t order() const noexcept { return static_cast<std::int64_t>(coeff_.size()); }
  const std::vector<std::int64_t>& coefficients() const noexcept { return coeff_; }

  /// Adds multiplicity * z; z's denominator must divide order().
  CyclotomicInt& add(const RootOfUnity& z, std::int64_t multiplicity = 1);

  CyclotomicInt& operator+=(const CyclotomicInt& o);
  CyclotomicInt& operator-=(const CyclotomicInt& o);
  friend CyclotomicInt operator+(CyclotomicInt x, const CyclotomicInt& y) { return x += y; }
  friend CyclotomicInt operator-(CyclotomicInt x, const CyclotomicInt& y) { return x -= y; }
  friend CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y);
  CyclotomicInt& operator*=(std::int64_t k);

  bool is_zero() const;
  friend bool operator==(const CyclotomicInt& x, const CyclotomicInt& y) { return (x - y).is_zero(); }

  /// True when the element equals the rational integer k.
  bool equals_integer(std::int64_t k) const;

  std::complex<double> to_complex() const;

 private:
  std::vector<std::int64_t> coeff_;
};

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n);

}  // namespace epstein

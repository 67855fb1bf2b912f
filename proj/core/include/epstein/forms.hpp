#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace epstein {

/// Integral binary quadratic form a x^2 + b x y + c y^2.
///
/// Discriminants throughout the library follow the standard convention
/// D = b^2 - 4ac. Positive definite forms have a > 0 and D < 0.
struct QuadForm {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  friend constexpr auto operator<=>(const QuadForm&, const QuadForm&) = default;

  constexpr std::int64_t disc() const noexcept { return b * b - 4 * a * c; }

  constexpr std::int64_t operator()(std::int64_t x, std::int64_t y) const noexcept {
    return a * x * x + b * x * y + c * y * y;
  }

  constexpr bool positive_definite() const noexcept { return a > 0 && disc() < 0; }

  /// |b| <= a <= c, with b >= 0 whenever |b| == a or a == c.
  constexpr bool is_reduced() const noexcept {
    const std::int64_t ab = b < 0 ? -b : b;
    if (!(ab <= a && a <= c)) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
  }

  bool is_primitive() const noexcept;

  std::string to_string() const;
};

/// Negative discriminant D = b^2 - 4ac with D = 0 or 1 (mod 4).
struct Discriminant {
  std::int64_t value = -4;
  bool fundamental = true;

  friend constexpr bool operator==(const Discriminant&, const Discriminant&) = default;
};

/// Validates D < 0 and D = 0,1 (mod 4); throws std::invalid_argument otherwise.
Discriminant make_discriminant(std::int64_t D);

bool is_fundamental_discriminant(std::int64_t D);

/// b^2 - 4ac of a positive definite form. Throws std::invalid_argument when Q
/// is not positive definite.
Discriminant discriminant(const QuadForm& Q);

/// The unique reduced form properly equivalent to Q.
QuadForm reduce(QuadForm Q);

/// Reduced representatives of the primitive classes of discriminant D, one per
/// class. The principal form comes first; the rest are ordered by
/// (a, |b|, sign), with b > 0 before b < 0.
std::vector<QuadForm> enumerate_classes(const Discriminant& D);

/// Number of primitive classes of discriminant D.
inline std::int64_t class_number(const Discriminant& D) {
  return static_cast<std::int64_t>(enumerate_classes(D).size());
}

QuadForm principal_form(const Discriminant& D);

/// Gauss composition, returned reduced. Both forms must be primitive with the
/// same discriminant.
QuadForm compose(const QuadForm& f, const QuadForm& g);

/// Reduced representative of the inverse class.
QuadForm inverse(const QuadForm& Q);

/// Smallest nonzero value represented by Q over Z^2 \ {0}; equals a for
/// reduced forms.
std::int64_t min_represented(const QuadForm& Q);

/// Every (x, y) with Q(x, y) == n. Bounded search using 4aQ = (2ax+by)^2 + |D|y^2.
std::vector<std::pair<std::int64_t, std::int64_t>> representations(const QuadForm& Q,
                                                                   std::int64_t n);

/// True when some (x, y) has Q(x, y) == n. Scans |y| upward from 0 and stops at
/// the first hit.
bool represents(const QuadForm& Q, std::int64_t n);

}  // namespace epstein

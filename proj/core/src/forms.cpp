#include "epstein/forms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "intmath.hpp"

namespace epstein {

using detail::floor_div;
using detail::isqrt;

bool QuadForm::is_primitive() const noexcept {
  return std::gcd(std::gcd(a, b), c) == 1;
}

std::string QuadForm::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (D >= 0) return false;
  const std::int64_t m = detail::mod_floor(D, 4);
  auto squarefree = [](std::int64_t n) {
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
      if (n % (p * p) == 0) return false;
      if (n % p == 0) n /= p;
    }
    return true;
  };
  if (m == 1) return squarefree(D);
  if (m == 0) {
    const std::int64_t d = D / 4;
    const std::int64_t r = detail::mod_floor(d, 4);
    return (r == 2 || r == 3) && squarefree(d);
  }
  return false;
}

Discriminant make_discriminant(std::int64_t D) {
  if (D >= 0) throw std::invalid_argument("discriminant must be negative: " + std::to_string(D));
  const std::int64_t m = detail::mod_floor(D, 4);
  if (m != 0 && m != 1) {
    throw std::invalid_argument("discriminant must be 0 or 1 mod 4: " + std::to_string(D));
  }
  return Discriminant{D, is_fundamental_discriminant(D)};
}

Discriminant discriminant(const QuadForm& Q) {
  if (!Q.positive_definite()) {
    throw std::invalid_argument("form " + Q.to_string() + " is not positive definite");
  }
  return make_discriminant(Q.disc());
}

QuadForm reduce(QuadForm Q) {
  if (!Q.positive_definite()) {
    throw std::invalid_argument("form " + Q.to_string() + " is not positive definite");
  }
  const std::int64_t D = Q.disc();
  for (;;) {
    if (Q.b <= -Q.a || Q.b > Q.a) {
      // (x, y) -> (x + k y, y) moves b into (-a, a].
      const std::int64_t k = floor_div(Q.a - Q.b, 2 * Q.a);
      Q.b += 2 * k * Q.a;
      Q.c = (Q.b * Q.b - D) / (4 * Q.a);
    }
    if (Q.a > Q.c) {
      Q = QuadForm{Q.c, -Q.b, Q.a};
      continue;
    }
    if (Q.a == Q.c && Q.b < 0) Q.b = -Q.b;
    return Q;
  }
}

QuadForm principal_form(const Discriminant& D) {
  const std::int64_t d = D.value;
  if (detail::mod_floor(d, 4) == 0) return QuadForm{1, 0, -d / 4};
  return QuadForm{1, 1, (1 - d) / 4};
}

std::vector<QuadForm> enumerate_classes(const Discriminant& D) {
  const std::int64_t absD = -D.value;
  std::vector<QuadForm> out;
  const std::int64_t a_max = isqrt(absD / 3);
  for (std::int64_t a = 1; a <= a_max; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + absD;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      const QuadForm Q{a, b, c};
      if (!Q.is_primitive()) continue;
      out.push_back(Q);
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadForm& f, const QuadForm& g) {
    const auto key = [](const QuadForm& q) {
      return std::make_tuple(q.a, q.b < 0 ? -q.b : q.b, q.b < 0 ? 1 : 0, q.c);
    };
    return key(f) < key(g);
  });
  return out;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  if (f.disc() != g.disc()) {
    throw std::invalid_argument("compose: discriminants differ (" + f.to_string() + ", " +
                                g.to_string() + ")");
  }
  if (!f.positive_definite() || !f.is_primitive() || !g.is_primitive()) {
    throw std::invalid_argument("compose: forms must be primitive and positive definite");
  }
  const std::int64_t D = f.disc();
  // Composition as in Cohen, "A Course in Computational Algebraic Number
  // Theory", Algorithm 5.4.7.
  QuadForm f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const std::int64_t s = (f1.b + f2.b) / 2;
  const std::int64_t n = f2.b - s;

  std::int64_t y1 = 0, d = 0;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    auto [gg, u, v] = detail::ext_gcd(f2.a, f1.a);
    (void)v;
    y1 = u;
    d = gg;
  }
  std::int64_t x2 = 0, y2 = 0, d1 = 0;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    auto [gg, xx, yy] = detail::ext_gcd(s, d);
    x2 = xx;
    y2 = -yy;
    d1 = gg;
  }
  const std::int64_t v1 = f1.a / d1;
  const std::int64_t v2 = f2.a / d1;
  const __int128 rr = static_cast<__int128>(y1) * y2 * n - static_cast<__int128>(x2) * f2.c;
  __int128 r = rr % v1;
  if (r < 0) r += v1;
  const __int128 b3 = f2.b + 2 * static_cast<__int128>(v2) * r;
  const __int128 a3 = static_cast<__int128>(v1) * v2;
  const __int128 c3 = (b3 * b3 - D) / (4 * a3);
  return reduce(QuadForm{static_cast<std::int64_t>(a3), static_cast<std::int64_t>(b3),
                         static_cast<std::int64_t>(c3)});
}

QuadForm inverse(const QuadForm& Q) { return reduce(QuadForm{Q.a, -Q.b, Q.c}); }

std::int64_t min_represented(const QuadForm& Q) { return reduce(Q).a; }

std::vector<std::pair<std::int64_t, std::int64_t>> representations(const QuadForm& Q,
                                                                   std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (n <= 0) return out;
  const std::int64_t absD = -Q.disc();
  // 4a n = (2ax + by)^2 + |D| y^2
  const std::int64_t y_max = isqrt(static_cast<std::int64_t>((4 * static_cast<__int128>(Q.a) * n) / absD));
  for (std::int64_t y = -y_max; y <= y_max; ++y) {
    const __int128 disc = static_cast<__int128>(4) * Q.a * n - static_cast<__int128>(absD) * y * y;
    if (disc < 0) continue;
    std::int64_t root = 0;
    if (!detail::is_square(static_cast<std::int64_t>(disc), root)) continue;
    for (const std::int64_t sgn : {1, -1}) {
      const std::int64_t num = -Q.b * y + sgn * root;
      if (num % (2 * Q.a) == 0) out.emplace_back(num / (2 * Q.a), y);
      if (root == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool represents(const QuadForm& Q, std::int64_t n) {
  if (n <= 0) return false;
  const std::int64_t absD = -Q.disc();
  const std::int64_t y_max = isqrt(static_cast<std::int64_t>((4 * static_cast<__int128>(Q.a) * n) / absD));
  for (std::int64_t ay = 0; ay <= y_max; ++ay) {
    const __int128 disc = static_cast<__int128>(4) * Q.a * n - static_cast<__int128>(absD) * ay * ay;
    if (disc < 0) break;
    std::int64_t root = 0;
    if (!detail::is_square(static_cast<std::int64_t>(disc), root)) continue;
    for (const std::int64_t y : {ay, -ay}) {
      for (const std::int64_t sgn : {1, -1}) {
        if ((-Q.b * y + sgn * root) % (2 * Q.a) == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace epstein

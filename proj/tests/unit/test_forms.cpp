#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "epstein/forms.hpp"

using namespace epstein;

namespace {

const std::int64_t kDiscs[] = {-3, -4, -7, -8, -15, -20, -23, -24, -47, -56, -71, -84, -104, -163, -231, -420};

// Every reduced primitive form by brute force over a <= sqrt(|D| / 3).
std::set<QuadForm> brute_reduced(std::int64_t D) {
  std::set<QuadForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const QuadForm Q{a, b, num / (4 * a)};
      if (!Q.is_reduced()) continue;
      if (std::gcd(std::gcd(Q.a, Q.b), Q.c) != 1) continue;
      out.insert(Q);
    }
  }
  return out;
}

// Q(p x + q y, r x + s y).
QuadForm transform(const QuadForm& Q, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
  return {Q(p, r), 2 * Q.a * p * q + Q.b * (p * s + q * r) + 2 * Q.c * r * s, Q(q, s)};
}

std::int64_t brute_count(const QuadForm& Q, std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t x = -200; x <= 200; ++x) {
    for (std::int64_t y = -200; y <= 200; ++y) {
      if ((x || y) && Q(x, y) == n) ++count;
    }
  }
  return count;
}

}  // namespace

TEST(Forms, DiscriminantValidation) {
  EXPECT_THROW(make_discriminant(-5), std::invalid_argument);
  EXPECT_THROW(make_discriminant(-6), std::invalid_argument);
  EXPECT_THROW(make_discriminant(0), std::invalid_argument);
  EXPECT_THROW(make_discriminant(5), std::invalid_argument);
  EXPECT_EQ(make_discriminant(-20).value, -20);
  EXPECT_TRUE(is_fundamental_discriminant(-3));
  EXPECT_TRUE(is_fundamental_discriminant(-8));
  EXPECT_TRUE(is_fundamental_discriminant(-20));
  EXPECT_FALSE(is_fundamental_discriminant(-12));
  EXPECT_FALSE(is_fundamental_discriminant(-16));
  EXPECT_FALSE(is_fundamental_discriminant(-27));
  EXPECT_THROW(discriminant(QuadForm{-1, 0, -1}), std::invalid_argument);
}

TEST(Forms, EnumerationMatchesBruteForce) {
  for (std::int64_t D : kDiscs) {
    const auto classes = enumerate_classes(make_discriminant(D));
    const std::set<QuadForm> got(classes.begin(), classes.end());
    EXPECT_EQ(got, brute_reduced(D)) << "D=" << D;
    EXPECT_EQ(got.size(), classes.size());
    EXPECT_EQ(classes.front(), principal_form(make_discriminant(D)));
  }
}

TEST(Forms, KnownClassNumbers) {
  EXPECT_EQ(class_number(make_discriminant(-4)), 1);
  EXPECT_EQ(class_number(make_discriminant(-163)), 1);
  EXPECT_EQ(class_number(make_discriminant(-20)), 2);
  EXPECT_EQ(class_number(make_discriminant(-23)), 3);
  EXPECT_EQ(class_number(make_discriminant(-47)), 5);
  EXPECT_EQ(class_number(make_discriminant(-84)), 4);
  EXPECT_EQ(class_number(make_discriminant(-420)), 8);
}

TEST(Forms, DiscriminantTwentyThreeOrder) {
  const auto classes = enumerate_classes(make_discriminant(-23));
  ASSERT_EQ(classes.size(), 3u);
  EXPECT_EQ(classes[0], (QuadForm{1, 1, 6}));
  EXPECT_EQ(classes[1], (QuadForm{2, 1, 3}));
  EXPECT_EQ(classes[2], (QuadForm{2, -1, 3}));
}

TEST(Forms, ReduceUndoesRandomUnimodularMaps) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> step(0, 3);
  for (std::int64_t D : kDiscs) {
    for (const QuadForm& Q : enumerate_classes(make_discriminant(D))) {
      QuadForm R = Q;
      for (int k = 0; k < 8; ++k) {
        switch (step(rng)) {
          case 0: R = transform(R, 1, 1, 0, 1); break;
          case 1: R = transform(R, 1, -1, 0, 1); break;
          case 2: R = transform(R, 0, -1, 1, 0); break;
          default: R = transform(R, 1, 0, 1, 1); break;
        }
      }
      ASSERT_EQ(R.disc(), D);
      EXPECT_EQ(reduce(R), Q) << R.to_string();
    }
  }
}

TEST(Forms, RepresentationsMatchBruteScan) {
  for (const QuadForm& Q : {QuadForm{1, 0, 1}, QuadForm{1, 0, 5}, QuadForm{2, 2, 3}, QuadForm{2, 1, 3}, QuadForm{3, 2, 5}}) {
    for (std::int64_t n = 1; n <= 150; ++n) {
      const auto reps = representations(Q, n);
      EXPECT_EQ(static_cast<std::int64_t>(reps.size()), brute_count(Q, n)) << Q.to_string() << " n=" << n;
      for (auto [x, y] : reps) EXPECT_EQ(Q(x, y), n);
      EXPECT_EQ(represents(Q, n), !reps.empty());
    }
    EXPECT_EQ(min_represented(Q), Q.a);
  }
}

TEST(Forms, CompositionIsAGroupLaw) {
  for (std::int64_t D : {-20LL, -23LL, -56LL, -84LL, -231LL, -420LL}) {
    const auto G = enumerate_classes(make_discriminant(D));
    const QuadForm e = G.front();
    for (const auto& f : G) {
      EXPECT_EQ(compose(f, e), f);
      EXPECT_EQ(compose(f, inverse(f)), e);
      for (const auto& g : G) {
        EXPECT_EQ(compose(f, g), compose(g, f));
        for (const auto& k : G) EXPECT_EQ(compose(compose(f, g), k), compose(f, compose(g, k)));
      }
    }
  }
}

TEST(Forms, CompositionMultipliesRepresentedPrimes) {
  // If f represents m and g represents n with gcd(m, n) = 1 then f * g represents m n.
  for (std::int64_t D : {-23LL, -56LL, -84LL}) {
    const auto G = enumerate_classes(make_discriminant(D));
    for (const auto& f : G) {
      for (const auto& g : G) {
        const QuadForm fg = compose(f, g);
        int checked = 0;
        for (std::int64_t m = 2; m < 60 && checked < 6; ++m) {
          if (!represents(f, m)) continue;
          for (std::int64_t n = 2; n < 60; ++n) {
            if (std::gcd(m, n) != 1 || std::gcd(m * n, -D) != 1 || !represents(g, n)) continue;
            EXPECT_TRUE(represents(fg, m * n)) << f.to_string() << " " << g.to_string() << " " << m << " " << n;
            ++checked;
            break;
          }
        }
        EXPECT_GT(checked, 0);
      }
    }
  }
}

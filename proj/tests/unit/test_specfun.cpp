#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "epstein/specfun.hpp"
#include "frozen_values.hpp"

using namespace epstein;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

// Imaginary parts of log Gamma agree modulo 2 pi only for branch-free formulas.
double mod_2pi_distance(cplx a, cplx b) {
  const double di = std::remainder((a - b).imag(), 2 * std::numbers::pi);
  return std::hypot((a - b).real(), di);
}

}  // namespace

TEST(Specfun, LogGammaFrozen) {
  for (const auto& [s, want] : frozen::log_gamma) {
    EXPECT_LT(std::abs(log_gamma(s) - want), 1e-13 * std::max(1.0, std::abs(want))) << s;
  }
}

TEST(Specfun, LogGammaRecurrenceAndReflection) {
  for (cplx s : {cplx(0.3, 2.0), cplx(-4.7, 0.4), cplx(12.0, -30.0), cplx(0.5, 200.0)}) {
    EXPECT_LT(mod_2pi_distance(log_gamma(s + 1.0), log_gamma(s) + std::log(s)), 1e-12) << s;
    const cplx refl = log_gamma(s) + log_gamma(1.0 - s);
    const cplx want = std::log(std::numbers::pi / std::sin(std::numbers::pi * s));
    EXPECT_LT(mod_2pi_distance(refl, want), 1e-10 * std::max(1.0, std::abs(want))) << s;
  }
  EXPECT_THROW(log_gamma(cplx(0.0, 0.0)), std::invalid_argument);
  EXPECT_THROW(log_gamma(cplx(-3.0, 0.0)), std::invalid_argument);
  EXPECT_NEAR(std::exp(log_gamma(cplx(5.0, 0.0))).real(), 24.0, 1e-12);
}

TEST(Specfun, DigammaIsDerivative) {
  for (cplx s : {cplx(0.7, 1.0), cplx(3.0, -20.0), cplx(-2.5, 0.5)}) {
    const double h = 1e-5;
    const cplx fd = (log_gamma(s + h) - log_gamma(s - h)) / (2 * h);
    EXPECT_LT(std::abs(digamma(s) - fd), 1e-8) << s;
  }
}

TEST(Specfun, TailIntegralFrozen) {
  for (const auto& [s, z, want] : frozen::tail) {
    const TailValue g = tail_integral(s, z);
    EXPECT_LT(rel(g.value, want), 1e-12) << s << " " << z;
    EXPECT_LE(std::abs(g.value - want), std::max(g.abs_error_est, 1e-15 * std::abs(want))) << s << " " << z;
  }
}

TEST(Specfun, TailIntegralDerivative) {
  for (cplx s : {cplx(0.8, 10.0), cplx(-0.7, 3.0), cplx(0.5, 100.0)}) {
    for (cplx z : {cplx(0.5, 0.0), cplx(2.0, 5.0), cplx(40.0, 1.0)}) {
      const double h = 1e-5;
      const cplx fd = (tail_integral(s + h, z).value - tail_integral(s - h, z).value) / (2 * h);
      const TailValue g = tail_integral(s, z, true);
      EXPECT_LT(std::abs(g.dvalue - fd), 1e-7 * std::max(1.0, std::abs(fd))) << s << " " << z;
    }
  }
}

TEST(Specfun, UpperIncompleteGammaRecurrence) {
  // Gamma(s + 1, x) = s Gamma(s, x) + x^s e^{-x}.
  for (cplx s : {cplx(0.5, 3.0), cplx(2.5, 0.0), cplx(-1.3, 7.0)}) {
    for (double x : {0.3, 2.0, 15.0}) {
      const cplx lhs = upper_inc_gamma(s + 1.0, x).value;
      const cplx rhs = s * upper_inc_gamma(s, x).value + std::pow(cplx(x, 0.0), s) * std::exp(-x);
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs))) << s << " " << x;
    }
  }
  const cplx s(2.5, 1.0);
  EXPECT_LT(std::abs(upper_inc_gamma(s, 0.0).value - std::exp(log_gamma(s))), 1e-13);
  const double x = 30.0;
  const cplx scaled = upper_inc_gamma_scaled(s, x).value;
  EXPECT_LT(rel(scaled * std::pow(cplx(x, 0.0), s) * std::exp(-x), upper_inc_gamma(s, x).value), 1e-12);
}

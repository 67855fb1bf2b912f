#include "epstein/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "epstein/errors.hpp"

namespace epstein {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 200000;

// B_{2k}, k = 1..10
constexpr double kBernoulli[] = {1.0 / 6,         -1.0 / 30,     1.0 / 42,          -1.0 / 30,
                                 5.0 / 66,        -691.0 / 2730, 7.0 / 6,           -3617.0 / 510,
                                 43867.0 / 798,   -174611.0 / 330};

bool near_pole(cplx s, double radius) {
  if (s.real() > radius) return false;
  const double k = std::round(s.real());
  return k <= 0.0 && std::abs(s - cplx(k, 0.0)) < radius;
}

}  // namespace

cplx log_gamma(cplx s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real())) {
    throw std::invalid_argument("log_gamma: pole at a nonpositive integer");
  }
  cplx shift{0.0, 0.0};
  while (s.real() < 0.0 || std::abs(s) < 15.0) {
    shift -= std::log(s);
    s += 1.0;
  }
  const cplx zi = 1.0 / s;
  const cplx zi2 = zi * zi;
  cplx r = (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * std::numbers::pi);
  cplx p = zi;
  for (int k = 1; k <= 10; ++k) {
    r += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= zi2;
  }
  return r + shift;
}

cplx digamma(cplx s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real())) {
    throw std::invalid_argument("digamma: pole at a nonpositive integer");
  }
  cplx shift{0.0, 0.0};
  while (s.real() < 0.0 || std::abs(s) < 15.0) {
    shift -= 1.0 / s;
    s += 1.0;
  }
  const cplx zi = 1.0 / s;
  const cplx zi2 = zi * zi;
  cplx r = std::log(s) - 0.5 * zi;
  cplx p = zi2;
  for (int k = 1; k <= 10; ++k) {
    r -= kBernoulli[k - 1] / (2.0 * k) * p;
    p *= zi2;
  }
  return r + shift;
}

namespace {

// g = z^{-s} Gamma(s) - e^{-z} sum_k z^k / (s)_{k+1}
TailValue tail_series(cplx s, cplx z, bool with_derivative) {
  TailValue out;
  cplx term = 1.0 / s;
  cplx sum = term;
  cplx harmonic = 1.0 / s;
  cplx dsum = -term * harmonic;
  double abs_sum = std::abs(term);
  int k = 1;
  for (; k < kMaxIter; ++k) {
    const cplx sk = s + static_cast<double>(k);
    term *= z / sk;
    sum += term;
    abs_sum += std::abs(term);
    if (with_derivative) {
      harmonic += 1.0 / sk;
      dsum -= term * harmonic;
    }
    if (std::abs(term) < 0.25 * kEps * std::abs(sum) &&
        (!with_derivative || std::abs(term * harmonic) < 0.25 * kEps * std::abs(dsum))) {
      break;
    }
  }
  if (k >= kMaxIter) throw NonConvergence("tail_integral: series did not converge");
  const cplx logz = std::log(z);
  const cplx lg = log_gamma(s);
  const cplx lead = std::exp(lg - s * logz);
  const cplx ez = std::exp(-z);
  out.value = lead - ez * sum;
  if (with_derivative) out.dvalue = lead * (digamma(s) - logz) - ez * dsum;
  // Rounding in an exponent of size X costs about X eps relative.
  const double lead_exp = std::abs(lg) + std::abs(s * logz) + 1.0;
  out.abs_error_est = 4.0 * kEps * (lead_exp * std::abs(lead) + (std::abs(z) + 2.0) * std::abs(ez) * abs_sum);
  out.iterations = k;
  return out;
}

// Modified Lentz on the Legendre continued fraction
// g = e^{-z} / (z+1-s - 1(1-s)/(z+3-s - 2(2-s)/(z+5-s - ...))).
TailValue tail_cf(cplx s, cplx z, bool with_derivative) {
  constexpr double tiny = 1e-300;
  TailValue out;
  cplx b = z + 1.0 - s;
  cplx c = 1.0 / tiny;
  cplx dc{0.0, 0.0};
  cplx d = 1.0 / b;
  cplx dd = d * d;  // derivative of 1/b with b' = -1
  cplx h = d;
  cplx dlog = d;  // (log h)'
  int i = 1;
  for (; i < kMaxIter; ++i) {
    const double di = static_cast<double>(i);
    const cplx an = -di * (di - s);
    const double dan = di;
    b += 2.0;
    const cplx Dr = an * d + b;
    const cplx dDr = dan * d + an * dd - 1.0;
    cplx C = b + an / c;
    cplx dC = -1.0 + dan / c - an * dc / (c * c);
    if (std::abs(C) < tiny) C = tiny;
    const cplx dnew = 1.0 / (std::abs(Dr) < tiny ? cplx(tiny) : Dr);
    const cplx del = dnew * C;
    h *= del;
    cplx step{0.0, 0.0};
    if (with_derivative) {
      dd = -dDr * dnew * dnew;
      step = -dDr * dnew + dC / C;
      dlog += step;
      dc = dC;
    }
    d = dnew;
    c = C;
    if (std::abs(del - 1.0) < 2.0 * kEps &&
        (!with_derivative || std::abs(step) < 2.0 * kEps * (1.0 + std::abs(dlog)))) {
      break;
    }
  }
  if (i >= kMaxIter) throw NonConvergence("tail_integral: continued fraction did not converge");
  const cplx ez = std::exp(-z);
  out.value = ez * h;
  if (with_derivative) out.dvalue = out.value * dlog;
  out.abs_error_est = 4.0 * kEps * (std::sqrt(static_cast<double>(i)) + std::abs(z)) * std::abs(out.value);
  out.iterations = i;
  return out;
}

}  // namespace

TailValue tail_integral(cplx s, cplx z, bool with_derivative) {
  if (!(z.real() > 0.0)) throw std::invalid_argument("tail_integral: Re z must be positive");
  if (std::abs(z) <= std::abs(s) && !near_pole(s, 0.25)) return tail_series(s, z, with_derivative);
  return tail_cf(s, z, with_derivative);
}

GammaValue upper_inc_gamma_scaled(cplx s, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("upper_inc_gamma_scaled: x must be positive");
  const TailValue g = tail_integral(s, cplx(x, 0.0));
  const double ex = std::exp(x);
  GammaValue out{g.value * ex, g.abs_error_est * ex};
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw std::overflow_error("upper_inc_gamma_scaled: result not representable");
  }
  return out;
}

GammaValue upper_inc_gamma(cplx s, double x) {
  if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("upper_inc_gamma: x must be >= 0");
  if (x == 0.0) {
    if (!(s.real() > 0.0)) throw std::invalid_argument("upper_inc_gamma: Gamma(s, 0) needs Re s > 0");
    const cplx v = std::exp(log_gamma(s));
    return {v, 8.0 * kEps * std::abs(v)};
  }
  const TailValue g = tail_integral(s, cplx(x, 0.0));
  const cplx xs = std::exp(s * std::log(x));
  GammaValue out{g.value * xs, g.abs_error_est * std::abs(xs)};
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw std::overflow_error("upper_inc_gamma: result not representable");
  }
  return out;
}

}  // namespace epstein

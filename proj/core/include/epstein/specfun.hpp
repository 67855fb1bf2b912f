#pragma once

#include <complex>

namespace epstein {

using cplx = std::complex<double>;

/// Principal branch of log Gamma(s). Throws std::invalid_argument at the poles.
cplx log_gamma(cplx s);

/// Gamma'(s) / Gamma(s).
cplx digamma(cplx s);

struct GammaValue {
  cplx value;
  double abs_error_est = 0.0;
};

/// Gamma(s, x) for real x > 0 (x == 0 gives Gamma(s) when Re s > 0). Throws
/// std::overflow_error when the value is not representable.
GammaValue upper_inc_gamma(cplx s, double x);

/// Gamma(s, x) * x^{-s} * e^{x}, representable well beyond the range of the
/// unscaled value.
GammaValue upper_inc_gamma_scaled(cplx s, double x);

/// g(s, z) = integral_1^inf e^{-z u} u^{s-1} du = z^{-s} Gamma(s, z) for
/// Re z > 0, and optionally its s-derivative.
struct TailValue {
  cplx value;
  cplx dvalue;
  double abs_error_est = 0.0;
  int iterations = 0;
};

TailValue tail_integral(cplx s, cplx z, bool with_derivative = false);

}  // namespace epstein

#include "epstein/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "epstein/arith.hpp"
#include "epstein/errors.hpp"

namespace epstein {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// Orientation of the summation ray for a point with Im s >= 0.
struct Frame {
  cplx s;
  bool conjugated = false;
  double phi = 0.0;
  double sin_theta = 1.0;
  cplx omega{1.0, 0.0};
  cplx log_pref;  // s log(scale * omega) - log Gamma(s)
};

Frame make_frame(double scale, cplx s, const EvalConfig& cfg) {
  Frame f;
  f.conjugated = s.imag() < 0.0;
  f.s = f.conjugated ? std::conj(s) : s;
  const double t = f.s.imag();
  const double theta = (t > 0.0 && cfg.c0 / t < kPi / 2) ? cfg.c0 / t : kPi / 2;
  f.phi = kPi / 2 - theta;
  f.sin_theta = std::sin(theta);
  f.omega = std::polar(1.0, f.phi);
  f.log_pref = f.s * cplx(std::log(scale), f.phi) - log_gamma(f.s);
  return f;
}

// Bound on sum over lambda > N of |w| (|g(s, c lambda omega)| + |g(1-s, c lambda / omega)|),
// using the counting bound density * (sqrt x + rho)^2 and, with
// p = ceil(max(Re s - 1, -Re s)), |g| <= int_1^inf e^{-y u} u^p du <= 2 e^{-y} / y
// for y >= 2p + 4.
double tail_bound(double N, double sigma, double scale, double sin_theta, double density, double rho) {
  const double p = std::max(0.0, std::ceil(std::max(sigma - 1.0, -sigma)));
  const double y = scale * N * sin_theta;
  if (!(y >= 2.0 * p + 4.0)) return std::numeric_limits<double>::infinity();
  const double B = 2.0 * std::exp(-y) / y;
  const double integral = B / (scale * sin_theta);
  const double per_part = density * ((1.0 + rho / std::sqrt(N)) * integral + 4.0 * rho * std::sqrt(N) * B) + B;
  return 2.0 * per_part;
}

double required_lambda_frame(const Frame& f, double scale, double density, double rho, double eps) {
  const double pref = std::exp(f.log_pref.real());
  const double target = 0.5 * eps / pref;
  double y = 4.0;
  auto N_of = [&](double yy) { return yy / (scale * f.sin_theta); };
  while (tail_bound(N_of(y), f.s.real(), scale, f.sin_theta, density, rho) > target) {
    y *= 1.05;
    if (y > 1e5) throw AccuracyNotMet("required_lambda: tolerance unreachable");
  }
  return N_of(y);
}

void check_point(cplx s, const EvalConfig& cfg) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw std::invalid_argument("evaluate: s must be finite");
  }
  if (s == cplx(1.0, 0.0) || s == cplx(0.0, 0.0)) {
    throw std::invalid_argument("evaluate: s = 0 and s = 1 are excluded");
  }
  if (s.real() < -3.0 || s.real() > 8.0) {
    throw std::invalid_argument("evaluate: Re s must lie in [-3, 8]");
  }
  if (std::abs(s.imag()) > cfg.t_max) {
    throw AccuracyNotMet("evaluate: |Im s| = " + std::to_string(std::abs(s.imag())) +
                         " exceeds t_max = " + std::to_string(cfg.t_max));
  }
}

// Radius of a fundamental cell around a lattice point, in the metric of the
// form: half the longer diagonal of the unit cell.
double cell_radius(double a, double b, double c) { return 0.5 * std::sqrt(a + std::abs(b) + c); }

}  // namespace

double required_lambda(const SeriesBundle& bundle, cplx s, double eps, const EvalConfig& cfg) {
  check_point(s, cfg);
  const Frame f = make_frame(bundle.scale, s, cfg);
  return required_lambda_frame(f, bundle.scale, bundle.density, bundle.rho, std::max(eps, 1e-15));
}

double lambda_cap_for(double scale, double density, double rho, const EvalConfig& cfg) {
  double cap = 0.0;
  for (const double sigma : {-0.99, 0.5, 2.99}) {
    for (const double t : {0.5, cfg.t_max}) {
      const Frame f = make_frame(scale, cplx(sigma, t), cfg);
      cap = std::max(cap, required_lambda_frame(f, scale, density, rho, 1e-15));
    }
  }
  return 1.05 * cap + 8.0;
}

std::vector<EvalResult> evaluate_bundle(const SeriesBundle& bundle, cplx s, double eps,
                                        const EvalConfig& cfg, bool with_derivative) {
  check_point(s, cfg);
  eps = std::max(eps, 1e-15);
  const Frame f = make_frame(bundle.scale, s, cfg);
  const double N = required_lambda_frame(f, bundle.scale, bundle.density, bundle.rho, eps);
  if (N > bundle.lambda_cap) {
    throw AccuracyNotMet("evaluate: coefficient table too short (need lambda <= " + std::to_string(N) +
                         ", have " + std::to_string(bundle.lambda_cap) + "); raise t_max");
  }
  const std::size_t K = bundle.weights.size();
  std::vector<cplx> acc(K), dacc(K);
  std::vector<double> abs_acc(K, 0.0), err_acc(K, 0.0);
  const cplx s1 = 1.0 - f.s;
  const cplx omega_inv = std::conj(f.omega);
  std::int64_t used = 0;
  for (std::size_t i = 0; i < bundle.lambda.size() && bundle.lambda[i] <= N; ++i) {
    const double a = bundle.scale * bundle.lambda[i];
    const TailValue g1 = tail_integral(f.s, a * f.omega, with_derivative);
    const TailValue g2 = tail_integral(s1, a * omega_inv, with_derivative);
    const cplx T = g1.value + omega_inv * g2.value;
    const cplx dT = g1.dvalue - omega_inv * g2.dvalue;
    const double absT = std::abs(g1.value) + std::abs(g2.value);
    const double errT = g1.abs_error_est + g2.abs_error_est;
    for (std::size_t k = 0; k < K; ++k) {
      const double w = bundle.weights[k][i];
      if (w == 0.0) continue;
      acc[k] += w * T;
      if (with_derivative) dacc[k] += w * dT;
      abs_acc[k] += std::abs(w) * absT;
      err_acc[k] += std::abs(w) * errT;
    }
    ++used;
  }
  const double pref_abs = std::exp(f.log_pref.real());
  const cplx pref = std::exp(f.log_pref);
  const double tail = tail_bound(N, f.s.real(), bundle.scale, f.sin_theta, bundle.density, bundle.rho);
  const cplx pole = 1.0 / (f.omega * (f.s - 1.0)) - 1.0 / f.s;
  const cplx dpole = -1.0 / (f.omega * (f.s - 1.0) * (f.s - 1.0)) + 1.0 / (f.s * f.s);
  const cplx dlog_pref = cplx(std::log(bundle.scale), f.phi) - (with_derivative ? digamma(f.s) : cplx(0.0));
  const double exponent_scale = std::abs(f.s) * std::abs(cplx(std::log(bundle.scale), f.phi)) +
                                std::abs(log_gamma(f.s));

  std::vector<EvalResult> out(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double R = bundle.residue[k];
    const cplx Kk = acc[k] + R * pole;
    EvalResult r;
    r.value = pref * Kk;
    r.terms_used = used;
    r.abs_error_est = pref_abs * (tail + err_acc[k] + 4.0 * kEps * (abs_acc[k] + std::abs(R * pole))) +
                      8.0 * kEps * exponent_scale * std::abs(r.value);
    if (with_derivative) r.derivative = pref * (dacc[k] + R * dpole + Kk * dlog_pref);
    if (f.conjugated) {
      r.value = std::conj(r.value);
      r.derivative = std::conj(r.derivative);
    }
    out[k] = r;
  }
  return out;
}

cplx log_completed(double scale, cplx s, cplx F) {
  return -s * std::log(scale) + log_gamma(s) + std::log(F);
}

EpsteinFunction::EpsteinFunction(const QuadForm& Q, EvalConfig cfg) : Q_(Q), cfg_(cfg) {
  if (!Q.positive_definite()) throw std::invalid_argument("EpsteinFunction: form not positive definite");
  auto b = std::make_shared<SeriesBundle>();
  const double absD = static_cast<double>(-Q.disc());
  b->scale = 2.0 * kPi / std::sqrt(absD);
  b->density = b->scale;
  const QuadForm R = reduce(Q);
  b->rho = cell_radius(static_cast<double>(R.a), static_cast<double>(R.b), static_cast<double>(R.c));
  b->lambda_cap = lambda_cap_for(b->scale, b->density, b->rho, cfg_);
  const auto cap = static_cast<std::int64_t>(std::ceil(b->lambda_cap));
  const auto r = representation_counts(R, cap);
  b->weights.assign(1, {});
  b->residue = {1.0};
  for (std::int64_t n = 1; n <= cap; ++n) {
    if (r[n] == 0) continue;
    b->lambda.push_back(static_cast<double>(n));
    b->weights[0].push_back(static_cast<double>(r[n]));
  }
  b->lambda_cap = static_cast<double>(cap);
  bundle_ = std::move(b);
}

EvalResult EpsteinFunction::eval(cplx s, double eps, bool with_derivative) const {
  return evaluate_bundle(*bundle_, s, eps, cfg_, with_derivative).front();
}

Field::Field(std::int64_t D, EvalConfig cfg) : data_(QuadraticField::build(D)), cfg_(cfg) {
  auto b = std::make_shared<SeriesBundle>();
  const int h = data_.h();
  const int J = data_.J();
  const double w = data_.w;
  b->scale = 2.0 * kPi / std::sqrt(static_cast<double>(-D));
  b->density = b->scale * std::max(1.0, h / w);
  b->rho = 0.0;
  for (const auto& Q : data_.group.elements) {
    b->rho = std::max(b->rho, cell_radius(static_cast<double>(Q.a), static_cast<double>(Q.b),
                                          static_cast<double>(Q.c)));
  }
  const auto cap = static_cast<std::int64_t>(std::ceil(lambda_cap_for(b->scale, b->density, b->rho, cfg_)));
  b->lambda_cap = static_cast<double>(cap);

  std::vector<std::vector<std::int64_t>> r;
  r.reserve(h);
  for (const auto& Q : data_.group.elements) r.push_back(representation_counts(Q, cap));
  const auto hecke = hecke_coeffs_many(data_.basis.chars, data_.group, cap);
  const auto ideals = ideal_counts(D, cap);

  b->weights.assign(static_cast<std::size_t>(h + J + 1), {});
  b->residue.assign(static_cast<std::size_t>(h + J + 1), 0.0);
  for (int k = 0; k < h; ++k) b->residue[k] = 1.0;
  for (int j = 0; j < J; ++j) b->residue[h + j] = (data_.basis.chars[j].index == 0) ? h / w : 0.0;
  b->residue[h + J] = h / w;
  for (std::int64_t n = 1; n <= cap; ++n) {
    if (ideals[n] == 0) continue;
    b->lambda.push_back(static_cast<double>(n));
    for (int k = 0; k < h; ++k) b->weights[k].push_back(static_cast<double>(r[k][n]));
    for (int j = 0; j < J; ++j) b->weights[h + j].push_back(hecke[j].values[n]);
    b->weights[h + J].push_back(static_cast<double>(ideals[n]));
  }
  bundle_ = std::move(b);
}

Field::Values Field::evaluate_all(cplx s, double eps, bool with_derivative) const {
  auto all = evaluate_bundle(*bundle_, s, eps, cfg_, with_derivative);
  const int h = data_.h();
  const int J = data_.J();
  Values v;
  v.epstein.assign(all.begin(), all.begin() + h);
  v.hecke.assign(all.begin() + h, all.begin() + h + J);
  v.dedekind = all[h + J];
  return v;
}

EvalResult Field::epstein(int class_index, cplx s, double eps) const {
  if (class_index < 0 || class_index >= data_.h()) throw std::invalid_argument("epstein: class index out of range");
  return evaluate_all(s, eps).epstein[class_index];
}

EvalResult Field::hecke_L(int j, cplx s, double eps) const {
  if (j < 0 || j >= data_.J()) throw std::invalid_argument("hecke_L: character index out of range");
  if (s == cplx(1.0, 0.0) && data_.basis.chars[j].index == 0) {
    throw std::invalid_argument("hecke_L: pole of the trivial character at s = 1");
  }
  return evaluate_all(s, eps).hecke[j];
}

EvalResult Field::hecke_L_class_sum(int j, cplx s, double eps) const {
  if (j < 0 || j >= data_.J()) throw std::invalid_argument("hecke_L: character index out of range");
  const auto v = evaluate_all(s, eps);
  const auto& chi = data_.basis.chars[j];
  EvalResult r;
  for (int A = 0; A < data_.h(); ++A) {
    r.value += chi(A) * v.epstein[A].value;
    r.abs_error_est += v.epstein[A].abs_error_est;
  }
  r.value /= static_cast<double>(data_.w);
  r.abs_error_est /= data_.w;
  r.terms_used = v.epstein.front().terms_used;
  return r;
}

EvalResult Field::epstein_via_characters(const QuadForm& Q, cplx s, double eps) const {
  const CoefficientVector a = coefficients(data_.group, data_.basis, Q);
  const auto v = evaluate_all(s, eps);
  EvalResult r;
  for (int j = 0; j < data_.J(); ++j) {
    r.value += a.a[j] * v.hecke[j].value;
    r.abs_error_est += std::abs(a.a[j]) * v.hecke[j].abs_error_est;
  }
  r.terms_used = v.dedekind.terms_used;
  return r;
}

EvalResult Field::dedekind_zeta(cplx s, double eps) const { return evaluate_all(s, eps).dedekind; }

EvalResult epstein_smoothed(cplx s, const QuadForm& Q, double eps, EvalConfig cfg) {
  // Size the table for this point only.
  cfg.t_max = std::max(std::abs(s.imag()), 1.0);
  return EpsteinFunction(Q, cfg).eval(s, eps);
}

EvalResult epstein_direct(cplx s, const QuadForm& Q, double eps, std::int64_t max_points) {
  if (!Q.positive_definite()) throw std::invalid_argument("epstein_direct: form not positive definite");
  const double sigma = s.real();
  if (!(sigma >= 1.1)) throw std::invalid_argument("epstein_direct: requires Re s >= 1.1");
  const QuadForm F = reduce(Q);
  const double k = 2.0 * kPi / std::sqrt(static_cast<double>(-F.disc()));
  const double rho = cell_radius(static_cast<double>(F.a), static_cast<double>(F.b), static_cast<double>(F.c));
  const double abs_s = std::abs(s);
  auto bound = [&](double R) {
    return abs_s * (2.0 * k * rho * std::pow(R, 0.5 - sigma) / (sigma - 0.5) +
                    (k * rho * rho + 1.0) * std::pow(R, -sigma) / sigma);
  };
  const double R_max = std::max(100.0, static_cast<double>(max_points) / k);
  double R = 64.0;
  while (R < R_max && bound(R) > eps) R = std::min(R_max, R * 1.5);
  const auto Ri = static_cast<std::int64_t>(R);
  const auto r = representation_counts(F, Ri);
  cplx sum{0.0, 0.0};
  std::int64_t count = 0;
  std::int64_t used = 0;
  for (std::int64_t n = Ri; n >= 1; --n) {  // small terms first
    if (r[n] == 0) continue;
    sum += static_cast<double>(r[n]) * std::exp(-s * std::log(static_cast<double>(n)));
    count += r[n];
    ++used;
  }
  const double Rd = static_cast<double>(Ri);
  const cplx Rs = std::exp(-s * std::log(Rd));
  sum += k * Rd * Rs / (s - 1.0) - Rs * (static_cast<double>(count) - k * Rd);
  EvalResult out;
  out.value = sum;
  out.abs_error_est = bound(Rd) + 8.0 * kEps * static_cast<double>(used) * std::abs(sum);
  out.terms_used = used;
  return out;
}

EvalResult eisenstein(cplx z, cplx s, double eps, EvalConfig cfg) {
  if (!(z.imag() > 0.0)) throw std::invalid_argument("eisenstein: z must lie in the upper half-plane");
  // Move z into the standard fundamental domain; the series is SL2(Z)-invariant.
  for (int it = 0; it < 1000; ++it) {
    z -= std::round(z.real());
    if (std::norm(z) >= 1.0 - 1e-14) break;
    z = -1.0 / z;
  }
  const double x = z.real();
  const double y = z.imag();
  // Q_z(m, n) = |m z + n|^2 / y, discriminant -4.
  const double A = std::norm(z) / y;
  const double B = 2.0 * x / y;
  const double C = 1.0 / y;
  SeriesBundle b;
  b.scale = kPi;
  b.density = kPi;
  b.rho = cell_radius(A, B, C);
  b.residue = {1.0};
  b.weights.assign(1, {});
  cfg.t_max = std::max(cfg.t_max, std::abs(s.imag()));
  const double N = required_lambda(b, s, eps, cfg);
  b.lambda_cap = N;
  // 4 A Q = (2 A m + B n)^2 + 4 n^2; one point of each +-pair, weight 2.
  std::vector<double> vals;
  const auto n_max = static_cast<std::int64_t>(std::floor(std::sqrt(A * N))) + 1;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    const double disc = 4.0 * A * N - 4.0 * nn * nn;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const auto lo = static_cast<std::int64_t>(std::floor((-B * nn - root) / (2.0 * A))) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((-B * nn + root) / (2.0 * A))) + 1;
    for (std::int64_t m = lo; m <= hi; ++m) {
      if (n == 0 && m <= 0) continue;
      const double md = static_cast<double>(m);
      const double q = A * md * md + B * md * nn + C * nn * nn;
      if (q > 0.0 && q <= N) vals.push_back(q);
    }
  }
  std::sort(vals.begin(), vals.end());
  b.lambda = vals;
  b.weights[0].assign(vals.size(), 2.0);
  return evaluate_bundle(b, s, eps, cfg).front();
}

double functional_equation_residual(const EpsteinFunction& E, cplx s, double eps) {
  const double scale = E.bundle().scale;
  const cplx s2 = 1.0 - s;
  const cplx l1 = log_completed(scale, s, E.eval(s, eps).value);
  const cplx l2 = log_completed(scale, s2, E.eval(s2, eps).value);
  const cplx d = l1.real() >= l2.real() ? l2 - l1 : l1 - l2;
  return std::abs(1.0 - std::exp(d));
}

}  // namespace epstein

#include "epstein/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epstein/arith.hpp"
#include "epstein/errors.hpp"
#include "epstein/parallel.hpp"

namespace epstein {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const Rectangle& r) {
  if (!(r.sigma1 < r.sigma2) || !(r.t1 < r.t2)) throw std::invalid_argument("rectangle: empty or inverted");
  if (!(r.t1 > 0.0)) throw std::invalid_argument("rectangle: t1 must be positive (pole at s = 1)");
}

struct EdgeResult {
  double phase = 0.0;
  std::int64_t points = 0;
  double min_abs = std::numeric_limits<double>::infinity();
  bool hit_floor = false;
};

// Phase change of E along the segment [p, q], with steps small enough that
// both the phase increment and the relative change |h E'/E| stay bounded.
EdgeResult walk_edge(const EpsteinFunction& E, cplx p, cplx q, double eps, double floor) {
  EdgeResult out;
  const double len = std::abs(q - p);
  const cplx dir = (q - p) / len;
  double u = 0.0;
  auto r0 = E.eval(p, eps, true);
  ++out.points;
  out.min_abs = std::abs(r0.value);
  if (out.min_abs < floor) {
    out.hit_floor = true;
    return out;
  }
  double h = std::min(len, 0.05);
  while (u < len) {
    const double step = std::min(h, len - u);
    const cplx z = p + (u + step) * dir;
    const auto r1 = E.eval(u + step >= len ? q : z, eps, true);
    ++out.points;
    const double a1 = std::abs(r1.value);
    out.min_abs = std::min(out.min_abs, a1);
    if (a1 < floor) {
      out.hit_floor = true;
      return out;
    }
    const double dphase = std::arg(r1.value / r0.value);
    const double rel = step * std::max(std::abs(r0.derivative / r0.value), std::abs(r1.derivative) / a1);
    if (std::abs(dphase) < kPi / 4 && rel < 0.75) {
      out.phase += dphase;
      u += step;
      r0 = r1;
      h = std::min(step * 1.5, 0.25);
    } else {
      h = step * 0.5;
      if (h < 1e-10) {
        out.hit_floor = true;
        return out;
      }
    }
  }
  return out;
}

std::array<cplx, 4> corners(const Rectangle& r) {
  return {cplx(r.sigma1, r.t1), cplx(r.sigma2, r.t1), cplx(r.sigma2, r.t2), cplx(r.sigma1, r.t2)};
}

double phase_around(const std::vector<cplx>& vals) {
  double total = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    total += std::arg(vals[(k + 1) % vals.size()] / vals[k]);
  }
  return total;
}

int local_multiplicity(const EpsteinFunction& E, cplx rho, double radius, double eps) {
  const int n = 64;
  std::vector<cplx> vals(n);
  for (int k = 0; k < n; ++k) vals[k] = E.eval(rho + std::polar(radius, 2.0 * kPi * k / n), eps).value;
  return static_cast<int>(std::lround(phase_around(vals) / (2.0 * kPi)));
}

bool newton(const EpsteinFunction& E, cplx& z, double eps, const Rectangle& box) {
  for (int it = 0; it < 60; ++it) {
    const auto r = E.eval(z, eps, true);
    if (r.derivative == cplx(0.0)) return false;
    cplx step = r.value / r.derivative;
    const double sl = std::abs(step);
    if (sl > 0.25) step *= 0.25 / sl;
    z -= step;
    if (z.real() < box.sigma1 - 0.5 || z.real() > box.sigma2 + 0.5 || z.imag() < box.t1 - 1.0 ||
        z.imag() > box.t2 + 1.0) {
      return false;
    }
    if (sl < 1e-12 * std::max(1.0, std::abs(z))) return true;
  }
  return false;
}

}  // namespace

int ZeroList::total_multiplicity() const {
  int s = 0;
  for (const auto& z : zeros) s += z.multiplicity;
  return s;
}

Rectangle perturbed(const Rectangle& r, double offset, bool open_lower) {
  Rectangle p = r;
  p.sigma1 += offset;
  p.sigma2 += offset;
  p.t1 += open_lower ? offset : -offset;
  p.t2 += offset;
  return p;
}

CountResult winding_count(const Rectangle& rect, const EpsteinFunction& E, const ZeroConfig& cfg) {
  validate(rect);
  CountResult res;
  std::int64_t points = 0;
  for (int attempt = 0; attempt <= cfg.max_perturbations; ++attempt) {
    const double offset = cfg.delta * (1.0 + 0.618 * attempt);
    const Rectangle c = perturbed(rect, offset, cfg.open_lower);
    const auto P = corners(c);
    std::array<EdgeResult, 4> edges;
    const double floor = std::max(1e-10, 1e3 * cfg.eps);
    parallel_for(4, [&](std::size_t k) { edges[k] = walk_edge(E, P[k], P[(k + 1) % 4], cfg.eps, floor); });
    bool hit = false;
    double total = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    for (const auto& e : edges) {
      hit = hit || e.hit_floor;
      total += e.phase;
      points += e.points;
      min_abs = std::min(min_abs, e.min_abs);
    }
    if (hit) continue;
    res.winding = total / (2.0 * kPi);
    res.count = static_cast<int>(std::lround(res.winding));
    if (std::abs(res.winding - res.count) > 1e-3) {
      throw AccuracyNotMet("winding_count: total phase is not a multiple of 2 pi");
    }
    res.contour_points = points;
    res.min_abs_on_contour = min_abs;
    res.perturbation = offset;
    res.contour = c;
    return res;
  }
  throw ContourZero("winding_count: E vanishes near the contour for every perturbation tried");
}

ZeroList locate_zeros(const Rectangle& rect, const EpsteinFunction& E, const ZeroConfig& cfg) {
  validate(rect);
  const Rectangle c = perturbed(rect, cfg.delta, cfg.open_lower);
  const double s_lo = c.sigma1 - cfg.grid_dsigma;
  const double s_hi = c.sigma2 + cfg.grid_dsigma;
  const double t_lo = c.t1 - cfg.grid_dt;
  const double t_hi = c.t2 + cfg.grid_dt;
  const int ns = static_cast<int>(std::ceil((s_hi - s_lo) / cfg.grid_dsigma)) + 1;
  const int nt = static_cast<int>(std::ceil((t_hi - t_lo) / cfg.grid_dt)) + 1;
  const double ds = (s_hi - s_lo) / (ns - 1);
  const double dt = (t_hi - t_lo) / (nt - 1);
  auto node = [&](int i, int j) { return cplx(s_lo + i * ds, t_lo + j * dt); };

  std::vector<cplx> grid(static_cast<std::size_t>(ns) * nt);
  parallel_for(static_cast<std::size_t>(nt), [&](std::size_t j) {
    for (int i = 0; i < ns; ++i) grid[j * ns + i] = E.eval(node(i, static_cast<int>(j)), 1e-10).value;
  });
  auto at = [&](int i, int j) { return grid[static_cast<std::size_t>(j) * ns + i]; };

  struct Candidate {
    cplx z;
    bool from_winding;
  };
  std::vector<Candidate> cands;
  for (int j = 0; j + 1 < nt; ++j) {
    for (int i = 0; i + 1 < ns; ++i) {
      const double w = phase_around({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      if (std::lround(w / (2.0 * kPi)) != 0) {
        cands.push_back({node(i, j) + cplx(0.5 * ds, 0.5 * dt), true});
      }
    }
  }
  for (int j = 1; j + 1 < nt; ++j) {
    for (int i = 1; i + 1 < ns; ++i) {
      const double v = std::abs(at(i, j));
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if ((di || dj) && std::abs(at(i + di, j + dj)) <= v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) cands.push_back({node(i, j), false});
    }
  }

  std::vector<cplx> roots(cands.size());
  std::vector<char> ok(cands.size(), 0);
  parallel_for(cands.size(), [&](std::size_t k) {
    cplx z = cands[k].z;
    if (newton(E, z, cfg.eps, c)) {
      roots[k] = z;
      ok[k] = 1;
    }
  });

  ZeroList out;
  out.grid_points = static_cast<std::int64_t>(grid.size());
  std::vector<cplx> found;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (!ok[k]) {
      if (cands[k].from_winding) ++out.unconverged;
      continue;
    }
    found.push_back(roots[k]);
  }
  std::sort(found.begin(), found.end(), [](cplx a, cplx b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  std::vector<cplx> uniq;
  for (const cplx z : found) {
    bool dup = false;
    for (auto it = uniq.rbegin(); it != uniq.rend() && z.imag() - it->imag() < 1e-6; ++it) {
      if (std::abs(z - *it) < 1e-6) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(z);
  }
  for (const cplx z : uniq) {
    if (!(z.real() > c.sigma1 && z.real() < c.sigma2 && z.imag() > c.t1 && z.imag() < c.t2)) continue;
    Zero zero;
    zero.beta = z.real();
    zero.gamma = z.imag();
    zero.multiplicity = std::max(1, local_multiplicity(E, z, 1e-3, cfg.eps));
    zero.residual = std::abs(E.eval(z, 1e-10).value);
    out.zeros.push_back(zero);
  }
  return out;
}

CountResult count_N_E(double sigma1, double sigma2, double T, const EpsteinFunction& E,
                      const ZeroConfig& cfg) {
  if (!(sigma1 > 0.5 && sigma1 < sigma2)) throw std::invalid_argument("count_N_E: need 1/2 < sigma1 < sigma2");
  if (!(T > 0.0)) throw std::invalid_argument("count_N_E: T must be positive");
  return winding_count(Rectangle{sigma1, sigma2, T, 2.0 * T}, E, cfg);
}

double sigma0_bound(const QuadForm& Q) {
  const QuadForm R = reduce(Q);
  const std::int64_t a = min_represented(R);
  const auto r = representation_counts(R, a);
  const double ra = static_cast<double>(r[a]);
  const double la = std::log(static_cast<double>(a));
  auto holds = [&](int k) {
    const double sigma = 1.1 + 0.01 * k;
    const auto e = epstein_direct(cplx(sigma, 0.0), R, 1e-9, 2'000'000);
    return std::exp(sigma * la) * (e.value.real() + e.abs_error_est) < 2.0 * ra;
  };
  int lo = 0;
  int hi = 1090;  // sigma = 12
  if (!holds(hi)) throw AccuracyNotMet("sigma0_bound: no zero-free abscissa found below 12");
  if (holds(lo)) return 1.1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  return 1.1 + 0.01 * hi;
}

namespace {

double integrate_log_abs(const EpsteinFunction& E, double sigma, double T, const std::vector<Zero>& zeros) {
  std::vector<double> breaks{T, 2.0 * T};
  for (double x = std::floor(T) + 1.0; x < 2.0 * T; x += 1.0) breaks.push_back(x);
  for (const auto& z : zeros) {
    if (std::abs(z.beta - sigma) < 0.05 && z.gamma > T && z.gamma < 2.0 * T) breaks.push_back(z.gamma);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> parts(breaks.size() - 1, 0.0);
  parallel_for(parts.size(), [&](std::size_t k) {
    auto f = [&](double t) { return std::log(std::abs(E.eval(cplx(sigma, t), 1e-12).value)); };
    parts[k] = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, breaks[k], breaks[k + 1], 12, 1e-11);
  });
  return pairwise_sum(parts);
}

// integral over u in [sigma, sigma0] of arg E(u + it), arg continued leftwards
// from sigma0 where it is fixed by the dominant term r(a) a^{-s}.
double integrate_arg(const EpsteinFunction& E, double sigma, double sigma0, double t, double log_a) {
  const int n = std::max(64, static_cast<int>(std::ceil((sigma0 - sigma) / 0.002)));
  const double h = (sigma0 - sigma) / n;
  std::vector<cplx> vals(static_cast<std::size_t>(n) + 1);
  parallel_for(vals.size(), [&](std::size_t k) { vals[k] = E.eval(cplx(sigma0 - h * k, t), 1e-12).value; });
  const cplx s0(sigma0, t);
  double arg = -t * log_a + std::arg(vals[0] * std::exp(s0 * log_a));
  std::vector<double> args(vals.size());
  args[0] = arg;
  for (std::size_t k = 1; k < vals.size(); ++k) {
    const double d = std::arg(vals[k] / vals[k - 1]);
    if (std::abs(d) > kPi / 2) throw BranchAmbiguous("littlewood_check: arg continuation step too coarse");
    arg += d;
    args[k] = arg;
  }
  // trapezoid
  std::vector<double> w(args.size());
  for (std::size_t k = 0; k < args.size(); ++k) w[k] = args[k] * ((k == 0 || k + 1 == args.size()) ? 0.5 : 1.0);
  return h * pairwise_sum(w);
}

}  // namespace

LittlewoodReport littlewood_check(double sigma, double sigma0, double T, const EpsteinFunction& E,
                                  const ZeroConfig& cfg) {
  if (!(sigma < sigma0)) throw std::invalid_argument("littlewood_check: need sigma < sigma0");
  if (!(T > 0.0)) throw std::invalid_argument("littlewood_check: T must be positive");
  LittlewoodReport rep;
  rep.sigma = sigma;
  rep.sigma0 = sigma0;
  rep.T = T;
  const Rectangle rect{sigma, sigma0, T, 2.0 * T};
  ZeroConfig zc = cfg;
  zc.delta = 1e-9;
  const ZeroList zl = locate_zeros(rect, E, zc);
  rep.zeros = zl.zeros;
  rep.zeros_located = zl.total_multiplicity();
  rep.zeros_counted = winding_count(rect, E, zc).count;
  for (const auto& z : zl.zeros) rep.lhs += z.multiplicity * (z.beta - sigma);

  const double log_a = std::log(static_cast<double>(min_represented(reduce(E.form()))));
  const double I_sigma = integrate_log_abs(E, sigma, T, zl.zeros);
  const double I_sigma0 = integrate_log_abs(E, sigma0, T, zl.zeros);
  rep.rhs = (I_sigma - I_sigma0) / (2.0 * kPi);
  const double A_top = integrate_arg(E, sigma, sigma0, 2.0 * T, log_a);
  const double A_bottom = integrate_arg(E, sigma, sigma0, T, log_a);
  rep.arg_term = (A_top - A_bottom) / (2.0 * kPi);
  rep.abs_diff = std::abs(rep.lhs - rep.rhs);
  rep.slack = 0.5 * std::log(2.0 * T);
  rep.identity_residual = std::abs(rep.lhs - rep.rhs - rep.arg_term);
  return rep;
}

}  // namespace epstein

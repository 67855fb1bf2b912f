#include "epstein/distrib.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "epstein/errors.hpp"
#include "epstein/parallel.hpp"

namespace epstein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSigmaStart = 1.25;
constexpr std::int64_t kEulerCutoff = 10000;

}  // namespace

double TruncationConfig::M(double T) const {
  if (!(T > std::exp(1.0))) throw std::invalid_argument("TruncationConfig: need T > e");
  return A * std::sqrt(std::log(std::log(T)));
}

LSampler::LSampler(const Field& field, const QuadForm& Q) : field_(&field) {
  const auto cv = coefficients(field.data().group, field.data().basis, Q);
  a_ = cv.a;
  class_index_ = cv.class_index;
  euler_ = std::make_shared<RandomModel>(field.data(), Q, kEulerCutoff);
}

LVector LSampler::sample(double sigma, double t, double eps) const {
  const int J = field_->data().J();
  auto eval = [&](double u) { return field_->evaluate_all(cplx(u, t), eps, true).hecke; };

  // X(p) = p^{-it} turns the random Euler log-sum into the truncated log L_j.
  std::vector<cplx> X(euler_->primes().size());
  for (std::size_t k = 0; k < X.size(); ++k) {
    X[k] = std::polar(1.0, -t * std::log(static_cast<double>(euler_->primes()[k])));
  }
  std::vector<EvalResult> cur = eval(kSigmaStart);
  std::vector<double> arg(J);
  for (int j = 0; j < J; ++j) {
    const double principal = std::arg(cur[j].value);
    const double approx = euler_->random_log_L(j, kSigmaStart, X).imag();
    arg[j] = principal + 2.0 * kPi * std::round((approx - principal) / (2.0 * kPi));
  }

  // A step is accepted when every arg increment is below pi/4 and the
  // principal log ratio agrees with the trapezoid rule on L'/L; a 2 pi slip
  // or a nearby zero breaks the agreement.
  double u = kSigmaStart;
  const double dir = sigma < u ? -1.0 : 1.0;
  double h = 0.5;
  while (u != sigma) {
    const double step = std::min(h, std::abs(sigma - u));
    const double un = std::abs(sigma - u) <= h ? sigma : u + dir * step;
    std::vector<EvalResult> next = eval(un);
    bool ok = true;
    for (int j = 0; j < J && ok; ++j) {
      if (next[j].value == 0.0) {
        ok = false;
        break;
      }
      const cplx ratio = std::log(next[j].value / cur[j].value);
      const cplx trap = 0.5 * (un - u) * (cur[j].derivative / cur[j].value + next[j].derivative / next[j].value);
      ok = std::abs(ratio.imag()) < kPi / 4 && std::abs(ratio - trap) < 0.25;
    }
    if (ok) {
      for (int j = 0; j < J; ++j) arg[j] += std::arg(next[j].value / cur[j].value);
      cur = std::move(next);
      u = un;
      h = std::min(2.0 * step, 0.5);
    } else {
      h = 0.5 * step;
      if (h < 1e-6) throw BranchAmbiguous("sample_L_vector: zero of L_j near the continuation path");
    }
  }

  LVector v;
  v.x.resize(2 * J);
  cplx E{0.0, 0.0};
  for (int j = 0; j < J; ++j) {
    v.x[j] = std::log(std::abs(cur[j].value));
    v.x[J + j] = arg[j];
    E += a_[j] * cur[j].value;
  }
  v.log_abs_E = std::log(std::abs(E));
  return v;
}

double LSampler::reconstruction_error(const LVector& v, double sigma, double t, double eps) const {
  const int J = field_->data().J();
  cplx E{0.0, 0.0};
  for (int j = 0; j < J; ++j) E += a_[j] * std::exp(cplx(v.x[j], v.x[J + j]));
  return std::abs(E - field_->epstein(class_index_, cplx(sigma, t), eps).value);
}

LVector sample_L_vector(const LSampler& S, double sigma, double t, double eps) { return S.sample(sigma, t, eps); }

double sample_t(std::uint64_t seed, std::int64_t i, double T) {
  return T + T * counter_uniform(seed, i, 0, 0);
}

std::vector<LVector> empirical_measure(const LSampler& S, double sigma, double T, std::int64_t n,
                                       std::uint64_t seed, std::int64_t* moved) {
  if (n < 0) throw std::invalid_argument("empirical_measure: n must be >= 0");
  if (!(sigma > 0.5)) throw std::invalid_argument("empirical_measure: sigma must exceed 1/2");
  std::vector<LVector> out(static_cast<std::size_t>(n));
  std::vector<std::int64_t> shifts(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double t0 = sample_t(seed, static_cast<std::int64_t>(i), T);
    for (int k = 0;; ++k) {
      try {
        out[i] = S.sample(sigma, t0 + 1e-3 * k);
        shifts[i] = k;
        return;
      } catch (const BranchAmbiguous&) {
        if (k >= 100) throw;
      }
    }
  });
  if (moved) {
    *moved = 0;
    for (auto s : shifts) *moved += s;
  }
  return out;
}

double psi_T(double tau, double T, const TruncationConfig& trunc, const std::vector<LVector>& samples) {
  return psi_fraction(tau, trunc.M(T), samples);
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct AxisBoxes {
  std::vector<Bits> emp;    // per interval pair
  std::vector<Bits> model;
};

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }

int popcount(const Bits& b) {
  int c = 0;
  for (auto w : b) c += std::popcount(w);
  return c;
}

void fill_axis(const std::vector<LVector>& pts, std::size_t axis, const std::vector<double>& edges,
               std::vector<Bits>& out) {
  const std::size_t e = edges.size();
  for (std::size_t lo = 0; lo < e; ++lo) {
    for (std::size_t hi = lo + 1; hi < e; ++hi) {
      Bits b = make_bits(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i].x[axis];
        if (x > edges[lo] && x <= edges[hi]) b[i / 64] |= std::uint64_t{1} << (i % 64);
      }
      out.push_back(std::move(b));
    }
  }
}

}  // namespace

DiscrepancyReport discrepancy(const std::vector<LVector>& emp, const std::vector<LVector>& model,
                              int grid_per_axis, std::uint64_t seed, std::int64_t max_exhaustive,
                              std::int64_t random_boxes) {
  if (emp.empty() || model.empty()) throw std::invalid_argument("discrepancy: samples must be nonempty");
  if (grid_per_axis < 2) throw std::invalid_argument("discrepancy: grid_per_axis must be >= 2");
  const std::size_t d = emp.front().x.size();
  for (const auto& v : emp) {
    if (v.x.size() != d) throw std::invalid_argument("discrepancy: dimension mismatch");
  }
  for (const auto& v : model) {
    if (v.x.size() != d) throw std::invalid_argument("discrepancy: dimension mismatch");
  }
  DiscrepancyReport rep;
  rep.n_emp = static_cast<std::int64_t>(emp.size());
  rep.n_model = static_cast<std::int64_t>(model.size());
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<AxisBoxes> axes(d);
  double total = 1.0;
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<double> pooled;
    pooled.reserve(emp.size() + model.size());
    for (const auto& v : emp) pooled.push_back(v.x[a]);
    for (const auto& v : model) pooled.push_back(v.x[a]);
    std::sort(pooled.begin(), pooled.end());
    std::vector<double> cuts;
    for (int k = 1; k <= grid_per_axis; ++k) {
      const std::size_t idx = std::min(pooled.size() - 1, (k * pooled.size()) / (grid_per_axis + 1));
      cuts.push_back(pooled[idx]);
    }
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    rep.grid.push_back(cuts);
    std::vector<double> edges{-inf};
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(inf);
    fill_axis(emp, a, edges, axes[a].emp);
    fill_axis(model, a, edges, axes[a].model);
    total *= static_cast<double>(axes[a].emp.size());
  }

  const double ne = static_cast<double>(emp.size());
  const double nm = static_cast<double>(model.size());
  double best = 0.0;
  std::int64_t examined = 0;

  if (total <= static_cast<double>(max_exhaustive)) {
    // Depth-first over axes, intersecting bitsets on the way down. The first
    // axis is split across workers; each keeps its own maximum.
    const std::size_t first = axes[0].emp.size();
    std::vector<double> best_by(first, 0.0);
    std::vector<std::int64_t> count_by(first, 0);
    parallel_for(first, [&](std::size_t p0) {
      std::vector<Bits> be(d), bm(d);
      be[0] = axes[0].emp[p0];
      bm[0] = axes[0].model[p0];
      double local = 0.0;
      std::int64_t cnt = 0;
      auto rec = [&](auto&& self, std::size_t a) -> void {
        if (a == d) {
          const double diff = std::abs(popcount(be[d - 1]) / ne - popcount(bm[d - 1]) / nm);
          local = std::max(local, diff);
          ++cnt;
          return;
        }
        for (std::size_t p = 0; p < axes[a].emp.size(); ++p) {
          be[a] = be[a - 1];
          bm[a] = bm[a - 1];
          for (std::size_t w = 0; w < be[a].size(); ++w) be[a][w] &= axes[a].emp[p][w];
          for (std::size_t w = 0; w < bm[a].size(); ++w) bm[a][w] &= axes[a].model[p][w];
          self(self, a + 1);
        }
      };
      rec(rec, 1);
      best_by[p0] = local;
      count_by[p0] = cnt;
    });
    for (std::size_t p = 0; p < first; ++p) {
      best = std::max(best, best_by[p]);
      examined += count_by[p];
    }
  } else {
    rep.randomized = true;
    std::mt19937_64 rng(seed);
    Bits be = make_bits(emp.size());
    Bits bm = make_bits(model.size());
    for (std::int64_t b = 0; b < random_boxes; ++b) {
      for (std::size_t a = 0; a < d; ++a) {
        std::uniform_int_distribution<std::size_t> pick(0, axes[a].emp.size() - 1);
        const std::size_t p = pick(rng);
        if (a == 0) {
          be = axes[a].emp[p];
          bm = axes[a].model[p];
        } else {
          for (std::size_t w = 0; w < be.size(); ++w) be[w] &= axes[a].emp[p][w];
          for (std::size_t w = 0; w < bm.size(); ++w) bm[w] &= axes[a].model[p][w];
        }
      }
      best = std::max(best, std::abs(popcount(be) / ne - popcount(bm) / nm));
      ++examined;
    }
  }
  rep.sup_estimate = best;
  rep.boxes_examined = examined;
  return rep;
}

std::vector<double> time_samples_logE(const EpsteinFunction& E, double sigma, double T, std::int64_t n,
                                      std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("time_samples_logE: n must be >= 0");
  std::vector<double> v(static_cast<std::size_t>(n));
  parallel_for(v.size(), [&](std::size_t i) {
    const double t = sample_t(seed, static_cast<std::int64_t>(i), T);
    v[i] = std::log(std::abs(E.eval(cplx(sigma, t), 1e-12).value));
  });
  return v;
}

MCEstimate time_average_logE(const EpsteinFunction& E, double sigma, double T, std::int64_t n,
                             std::uint64_t seed) {
  const auto v = time_samples_logE(E, sigma, T, n, seed);
  MCEstimate e;
  e.n = n;
  e.seed = seed;
  if (v.empty()) return e;
  e.mean = pairwise_sum(v) / static_cast<double>(n);
  if (n > 1) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - e.mean) * (v[i] - e.mean);
    e.std_error = std::sqrt(pairwise_sum(sq) / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return e;
}

}  // namespace epstein

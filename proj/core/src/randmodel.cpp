#include "epstein/randmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "epstein/arith.hpp"
#include "epstein/parallel.hpp"

namespace epstein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTinyE = 1e-300;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MCEstimate estimate(const std::vector<double>& v, const ModelConfig& cfg, std::int64_t resampled) {
  MCEstimate e;
  e.n = static_cast<std::int64_t>(v.size());
  e.P = cfg.P;
  e.seed = cfg.seed;
  e.resampled = resampled;
  if (v.empty()) return e;
  e.mean = pairwise_sum(v) / static_cast<double>(v.size());
  if (v.size() > 1) {
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - e.mean) * (v[i] - e.mean);
    const double var = pairwise_sum(sq) / static_cast<double>(v.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(v.size()));
  }
  return e;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.5)) throw std::invalid_argument("random model: sigma must exceed 1/2");
}

}  // namespace

namespace {

std::uint64_t stream_key(std::uint64_t seed, std::int64_t index, std::int64_t attempt) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(index));
  return splitmix64(h ^ (static_cast<std::uint64_t>(attempt) * 0xd1b54a32d192ed03ULL));
}

double unit_from_key(std::uint64_t key, std::int64_t p) {
  const std::uint64_t h = splitmix64(key ^ (static_cast<std::uint64_t>(p) * 0x9e3779b97f4a7c15ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// exp(2 pi i u) from a 1024-entry table and a short Taylor series for the
// remainder angle (|r| < 2 pi / 2048, error below 1e-16).
struct UnitCircleTable {
  static constexpr int kBits = 10;
  static constexpr int kSize = 1 << kBits;
  std::vector<cplx> root;
  UnitCircleTable() : root(kSize) {
    for (int k = 0; k < kSize; ++k) root[k] = std::polar(1.0, 2.0 * kPi * k / kSize);
  }
  cplx operator()(std::uint64_t bits53) const {
    const std::uint64_t idx = bits53 >> (53 - kBits);
    const std::uint64_t rem = bits53 & ((std::uint64_t{1} << (53 - kBits)) - 1);
    const double r = 2.0 * kPi * static_cast<double>(rem) * 0x1.0p-53;
    const double r2 = r * r;
    const double c = 1.0 - r2 * (0.5 - r2 * (1.0 / 24 - r2 * (1.0 / 720)));
    const double s = r * (1.0 - r2 * (1.0 / 6 - r2 * (1.0 / 120 - r2 * (1.0 / 5040))));
    const cplx base = root[idx];
    return {base.real() * c - base.imag() * s, base.real() * s + base.imag() * c};
  }
};

const UnitCircleTable& unit_circle() {
  static const UnitCircleTable table;
  return table;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::int64_t index, std::int64_t attempt, std::int64_t p) {
  return unit_from_key(stream_key(seed, index, attempt), p);
}

RandomModel::RandomModel(const QuadraticField& F, const QuadForm& Q, std::int64_t P) : P_(P) {
  if (P < 2) throw std::invalid_argument("RandomModel: prime cutoff must be >= 2");
  a_ = coefficients(F.group, F.basis, Q).a;
  const int J = F.J();
  coef_.assign(J, {});
  for (const PrimeData& pd : prime_data_table(P, F.group)) {
    primes_.push_back(pd.p);
    log_p_.push_back(std::log(static_cast<double>(pd.p)));
    kind_.push_back(pd.type == SplittingType::Split ? Kind::Split
                    : pd.type == SplittingType::Ramified ? Kind::Ramified
                                                          : Kind::Inert);
    for (int j = 0; j < J; ++j) coef_[j].push_back(F.basis.chars[j](pd.class_indices[0]).real());
  }
}

std::vector<cplx> RandomModel::sample_X(std::uint64_t seed, std::int64_t index, std::int64_t attempt) const {
  std::vector<cplx> X(primes_.size());
  const std::uint64_t key = stream_key(seed, index, attempt);
  const UnitCircleTable& circle = unit_circle();
  for (std::size_t k = 0; k < primes_.size(); ++k) {
    const std::uint64_t h = splitmix64(key ^ (static_cast<std::uint64_t>(primes_[k]) * 0x9e3779b97f4a7c15ULL));
    X[k] = circle(h >> 11);
  }
  return X;
}

cplx RandomModel::random_log_L(int j, double sigma, const std::vector<cplx>& X) const {
  check_sigma(sigma);
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < primes_.size(); ++k) {
    const double c = coef_[j][k];
    switch (kind_[k]) {
      case Kind::Split: {
        const cplx x = X[k] * std::exp(-sigma * log_p_[k]);
        acc -= std::log(1.0 - 2.0 * c * x + x * x);
        break;
      }
      case Kind::Ramified:
        acc -= std::log(1.0 - c * X[k] * std::exp(-sigma * log_p_[k]));
        break;
      case Kind::Inert:
        acc -= std::log(1.0 - c * X[k] * std::exp(-2.0 * sigma * log_p_[k]));
        break;
    }
  }
  return acc;
}

cplx RandomModel::random_L(int j, double sigma, const std::vector<cplx>& X) const {
  return std::exp(random_log_L(j, sigma, X));
}

void RandomModel::denominators(double sigma, const std::vector<cplx>& X, std::vector<cplx>& D) const {
  const int J = this->J();
  D.assign(J, cplx(1.0, 0.0));
  for (std::size_t k = 0; k < primes_.size(); ++k) {
    const double pw = std::exp(-sigma * log_p_[k]);
    switch (kind_[k]) {
      case Kind::Split: {
        const cplx x = X[k] * pw;
        const cplx x2 = x * x;
        for (int j = 0; j < J; ++j) D[j] *= 1.0 - 2.0 * coef_[j][k] * x + x2;
        break;
      }
      case Kind::Ramified: {
        const cplx x = X[k] * pw;
        for (int j = 0; j < J; ++j) D[j] *= 1.0 - coef_[j][k] * x;
        break;
      }
      case Kind::Inert: {
        const cplx x = X[k] * (pw * pw);
        for (int j = 0; j < J; ++j) D[j] *= 1.0 - coef_[j][k] * x;
        break;
      }
    }
  }
}

ModelSample RandomModel::sample(double sigma, const std::vector<cplx>& X) const {
  check_sigma(sigma);
  std::vector<cplx> D;
  denominators(sigma, X, D);
  ModelSample s;
  s.L.resize(D.size());
  for (std::size_t j = 0; j < D.size(); ++j) {
    s.L[j] = 1.0 / D[j];
    s.E += a_[j] * s.L[j];
  }
  return s;
}

RandomModel::LogEBatch RandomModel::log_abs_E(const std::vector<double>& sigmas, std::int64_t n,
                                              std::uint64_t seed) const {
  for (double s : sigmas) check_sigma(s);
  if (n < 1) throw std::invalid_argument("log_abs_E: n must be >= 1");
  const std::size_t K = sigmas.size();
  LogEBatch out;
  out.log_abs_E.assign(K, std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<std::int64_t> attempts(static_cast<std::size_t>(n), 0);
  const int J = this->J();
  // Per-sigma prime powers, shared by all draws.
  std::vector<std::vector<double>> pw(K, std::vector<double>(primes_.size()));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t q = 0; q < primes_.size(); ++q) {
      const double e = std::exp(-sigmas[k] * log_p_[q]);
      pw[k][q] = kind_[q] == Kind::Inert ? e * e : e;
    }
  }
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    std::vector<cplx> D(J);
    for (std::int64_t attempt = 0;; ++attempt) {
      const std::vector<cplx> X = sample_X(seed, static_cast<std::int64_t>(i), attempt);
      bool bad = false;
      for (std::size_t k = 0; k < K && !bad; ++k) {
        std::fill(D.begin(), D.end(), cplx(1.0, 0.0));
        for (std::size_t q = 0; q < primes_.size(); ++q) {
          const cplx x = X[q] * pw[k][q];
          if (kind_[q] == Kind::Split) {
            const cplx x2 = x * x;
            for (int j = 0; j < J; ++j) D[j] *= 1.0 - 2.0 * coef_[j][q] * x + x2;
          } else {
            for (int j = 0; j < J; ++j) D[j] *= 1.0 - coef_[j][q] * x;
          }
        }
        cplx E{0.0, 0.0};
        for (int j = 0; j < J; ++j) E += a_[j] / D[j];
        const double absE = std::abs(E);
        if (!(absE >= kTinyE) || !std::isfinite(absE)) {
          bad = true;
          break;
        }
        out.log_abs_E[k][i] = std::log(absE);
      }
      if (!bad) {
        attempts[i] = attempt;
        break;
      }
    }
  });
  for (auto a : attempts) out.resampled += a;
  return out;
}

std::vector<LVector> RandomModel::L_vectors(double sigma, std::int64_t n, std::uint64_t seed,
                                            std::int64_t* resampled) const {
  check_sigma(sigma);
  if (n < 0) throw std::invalid_argument("L_vectors: n must be >= 0");
  const int J = this->J();
  const std::size_t np = primes_.size();
  std::vector<double> pw(np);
  std::vector<double> bound(np);
  for (std::size_t q = 0; q < np; ++q) {
    const double e = std::exp(-sigma * log_p_[q]);
    pw[q] = kind_[q] == Kind::Inert ? e * e : e;
    bound[q] = (kind_[q] == Kind::Split ? 2.0 : 1.0) * std::asin(std::min(1.0, pw[q]));
  }
  // Chunks whose factors' arguments provably sum to less than pi in absolute
  // value; the principal log of a chunk product is then the sum of the
  // factors' principal logs.
  std::vector<std::size_t> chunk_end;
  double acc = 0.0;
  for (std::size_t q = 0; q < np; ++q) {
    if (acc + bound[q] >= 3.0) {
      chunk_end.push_back(q);
      acc = 0.0;
    }
    acc += bound[q];
  }
  chunk_end.push_back(np);

  std::vector<LVector> out(static_cast<std::size_t>(n));
  std::vector<std::int64_t> attempts(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    for (std::int64_t attempt = 0;; ++attempt) {
      const std::vector<cplx> X = sample_X(seed, static_cast<std::int64_t>(i), attempt);
      std::vector<cplx> logL(J, cplx(0.0, 0.0));
      std::vector<cplx> prod(J);
      std::size_t start = 0;
      for (const std::size_t end : chunk_end) {
        std::fill(prod.begin(), prod.end(), cplx(1.0, 0.0));
        for (std::size_t q = start; q < end; ++q) {
          const cplx x = X[q] * pw[q];
          if (kind_[q] == Kind::Split) {
            const cplx x2 = x * x;
            for (int j = 0; j < J; ++j) prod[j] *= 1.0 - 2.0 * coef_[j][q] * x + x2;
          } else {
            for (int j = 0; j < J; ++j) prod[j] *= 1.0 - coef_[j][q] * x;
          }
        }
        for (int j = 0; j < J; ++j) logL[j] -= std::log(prod[j]);
        start = end;
      }
      cplx E{0.0, 0.0};
      for (int j = 0; j < J; ++j) E += a_[j] * std::exp(logL[j]);
      const double absE = std::abs(E);
      if (!(absE >= kTinyE) || !std::isfinite(absE)) continue;
      LVector v;
      v.x.resize(2 * J);
      for (int j = 0; j < J; ++j) {
        v.x[j] = logL[j].real();
        v.x[J + j] = logL[j].imag();
      }
      v.log_abs_E = std::log(absE);
      out[i] = std::move(v);
      attempts[i] = attempt;
      break;
    }
  });
  if (resampled) {
    *resampled = 0;
    for (auto a : attempts) *resampled += a;
  }
  return out;
}

MCEstimate mc_M(const RandomModel& model, double sigma, const ModelConfig& cfg) {
  auto batch = model.log_abs_E({sigma}, cfg.n_samples, cfg.seed);
  return estimate(batch.log_abs_E[0], cfg, batch.resampled);
}

std::vector<MCEstimate> mc_M_prime_many(const RandomModel& model, const std::vector<double>& sigmas,
                                        double h, const ModelConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("mc_M_prime: h must be positive");
  std::vector<double> pts;
  for (double s : sigmas) {
    if (!(s - h > 0.5)) throw std::invalid_argument("mc_M_prime: need sigma - h > 1/2");
    pts.push_back(s - h);
    pts.push_back(s + h);
  }
  auto batch = model.log_abs_E(pts, cfg.n_samples, cfg.seed);
  std::vector<MCEstimate> out;
  const std::size_t n = static_cast<std::size_t>(cfg.n_samples);
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = (batch.log_abs_E[2 * k + 1][i] - batch.log_abs_E[2 * k][i]) / (2.0 * h);
    }
    out.push_back(estimate(d, cfg, batch.resampled));
  }
  return out;
}

MCEstimate mc_M_prime(const RandomModel& model, double sigma, double h, const ModelConfig& cfg) {
  return mc_M_prime_many(model, {sigma}, h, cfg).front();
}

DensityEstimate density_constant(const RandomModel& model, double sigma1, double sigma2,
                                 const ModelConfig& cfg, double h) {
  if (!(sigma1 > 0.5 && sigma1 <= sigma2)) {
    throw std::invalid_argument("density_constant: need 1/2 < sigma1 <= sigma2");
  }
  std::vector<double> pts{sigma1 - h, sigma1 + h, sigma2 - h, sigma2 + h};
  if (!(pts[0] > 0.5)) throw std::invalid_argument("density_constant: need sigma1 - h > 1/2");
  auto batch = model.log_abs_E(pts, cfg.n_samples, cfg.seed);
  const std::size_t n = static_cast<std::size_t>(cfg.n_samples);
  std::vector<double> d1(n), d2(n), dc(n);
  for (std::size_t i = 0; i < n; ++i) {
    d1[i] = (batch.log_abs_E[1][i] - batch.log_abs_E[0][i]) / (2.0 * h);
    d2[i] = (batch.log_abs_E[3][i] - batch.log_abs_E[2][i]) / (2.0 * h);
    dc[i] = (d2[i] - d1[i]) / (2.0 * kPi);
  }
  DensityEstimate out;
  out.M_prime_1 = estimate(d1, cfg, batch.resampled);
  out.M_prime_2 = estimate(d2, cfg, batch.resampled);
  out.c_E = estimate(dc, cfg, batch.resampled);
  out.c_E.mean = (out.M_prime_2.mean - out.M_prime_1.mean) / (2.0 * kPi);
  out.alpha = sigma1 / (4.0 * model.J() + 2.0);
  return out;
}

MomentReport moments_from_samples(int k_max, double sigma, const std::vector<LVector>& samples) {
  if (k_max < 0) throw std::invalid_argument("moments: k_max must be >= 0");
  MomentReport rep;
  rep.sigma = sigma;
  rep.n = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return rep;
  const std::size_t J = samples.front().x.size() / 2;
  const std::size_t n = samples.size();
  const ModelConfig dummy;
  for (int k = 0; k <= k_max; ++k) {
    MomentRow row;
    row.k = k;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(std::abs(samples[i].log_abs_E), 2 * k);
    const MCEstimate e = estimate(v, dummy, 0);
    row.moment_logE = e.mean;
    row.stderr_logE = e.std_error;
    for (std::size_t j = 0; j < J; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double re = samples[i].x[j];
        const double im = samples[i].x[J + j];
        v[i] = std::pow(re * re + im * im, k);
      }
      row.moment_logL.push_back(pairwise_sum(v) / static_cast<double>(n));
    }
    if (k >= 1) {
      row.fitted_C = std::pow(row.moment_logE, 1.0 / (2.0 * k)) / k;
      rep.C_logE = std::max(rep.C_logE, row.fitted_C);
      for (double m : row.moment_logL) rep.C_logL = std::max(rep.C_logL, std::pow(m, 1.0 / k) / k);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

MomentReport moment_report(const RandomModel& model, int k_max, double sigma, const ModelConfig& cfg) {
  if (k_max > 4) throw std::invalid_argument("moment_report: k_max must be <= 4");
  const auto samples = model.L_vectors(sigma, cfg.n_samples, cfg.seed);
  return moments_from_samples(k_max, sigma, samples);
}

bool in_good_set(const LVector& v, double M) {
  for (double x : v.x) {
    if (!(std::abs(x) < M)) return false;
  }
  return v.log_abs_E > -M * M * M * M;
}

double psi_fraction(double tau, double M, const std::vector<LVector>& samples) {
  if (samples.empty()) return 0.0;
  std::int64_t hits = 0;
  for (const auto& v : samples) {
    if (in_good_set(v, M) && v.log_abs_E > tau) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

double psi_rand(const RandomModel& model, double tau, double sigma, double M, const ModelConfig& cfg) {
  return psi_fraction(tau, M, model.L_vectors(sigma, cfg.n_samples, cfg.seed));
}

}  // namespace epstein

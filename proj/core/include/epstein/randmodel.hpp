#pragma once

#include <cstdint>
#include <vector>

#include "epstein/characters.hpp"
#include "epstein/specfun.hpp"

namespace epstein {

struct ModelConfig {
  std::int64_t P = 10000;
  std::int64_t n_samples = 100000;
  std::uint64_t seed = 1;
  double sigma = 0.8;
};

struct ModelSample {
  std::vector<cplx> L;
  cplx E;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
  std::int64_t P = 0;
  std::uint64_t seed = 0;
  /// Draws replaced because |E| < 1e-300.
  std::int64_t resampled = 0;
};

/// (log|L_1|, ..., log|L_J|, arg L_1, ..., arg L_J) together with log|E|.
struct LVector {
  std::vector<double> x;
  double log_abs_E = 0.0;
};

/// Uniform in [0, 1), a pure function of (seed, index, attempt, p).
double counter_uniform(std::uint64_t seed, std::int64_t index, std::int64_t attempt, std::int64_t p);

/// Random Euler products attached to one form: every rational prime p <= P
/// carries X(p) uniform on the unit circle, shared by the primes above it.
class RandomModel {
 public:
  RandomModel(const QuadraticField& F, const QuadForm& Q, std::int64_t P);

  int J() const noexcept { return static_cast<int>(a_.size()); }
  std::int64_t P() const noexcept { return P_; }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<std::int64_t>& primes() const noexcept { return primes_; }

  /// X(p) for every prime p <= P, aligned with primes().
  std::vector<cplx> sample_X(std::uint64_t seed, std::int64_t index, std::int64_t attempt = 0) const;

  /// log L_j(sigma, X): sum of principal logs of the Euler factors.
  cplx random_log_L(int j, double sigma, const std::vector<cplx>& X) const;
  cplx random_L(int j, double sigma, const std::vector<cplx>& X) const;

  /// L_j by direct products and E = sum a_j L_j.
  ModelSample sample(double sigma, const std::vector<cplx>& X) const;

  /// log|E(sigma_k, X_i)| for i < n and each sigma_k, sharing X_i across sigma.
  /// A draw is replaced (attempt + 1) when |E| < 1e-300 at any sigma_k.
  struct LogEBatch {
    std::vector<std::vector<double>> log_abs_E;  // [k][i]
    std::int64_t resampled = 0;
  };
  LogEBatch log_abs_E(const std::vector<double>& sigmas, std::int64_t n, std::uint64_t seed) const;

  /// Full vectors, with arg L_j from the log-space sum.
  std::vector<LVector> L_vectors(double sigma, std::int64_t n, std::uint64_t seed,
                                 std::int64_t* resampled = nullptr) const;

 private:
  enum class Kind : std::uint8_t { Split, Ramified, Inert };
  std::int64_t P_;
  std::vector<double> a_;
  std::vector<std::int64_t> primes_;
  std::vector<double> log_p_;
  std::vector<Kind> kind_;
  /// coef_[j][k]: Re chi_j(p) for split primes, chi_j(p) for ramified and inert ones.
  std::vector<std::vector<double>> coef_;

  void denominators(double sigma, const std::vector<cplx>& X, std::vector<cplx>& D) const;
};

MCEstimate mc_M(const RandomModel& model, double sigma, const ModelConfig& cfg);

/// Central difference with common random numbers at sigma +- h.
MCEstimate mc_M_prime(const RandomModel& model, double sigma, double h, const ModelConfig& cfg);

struct DensityEstimate {
  MCEstimate c_E;
  MCEstimate M_prime_1;
  MCEstimate M_prime_2;
  /// sigma1 / (4J + 2).
  double alpha = 0.0;
};

/// c_E(sigma1, sigma2) = (M'(sigma2) - M'(sigma1)) / 2 pi.
DensityEstimate density_constant(const RandomModel& model, double sigma1, double sigma2,
                                 const ModelConfig& cfg, double h = 0.01);

/// M' at several points from one common-random-number batch; c_E between
/// any two of them is (M'[k] - M'[l]) / 2 pi.
std::vector<MCEstimate> mc_M_prime_many(const RandomModel& model, const std::vector<double>& sigmas,
                                        double h, const ModelConfig& cfg);

struct MomentRow {
  int k = 0;
  double moment_logE = 0.0;
  double stderr_logE = 0.0;
  /// Per basis character, E|log L_j|^{2k}.
  std::vector<double> moment_logL;
  /// moment^{1/2k} / k for log|E|; 0 for k = 0.
  double fitted_C = 0.0;
};

struct MomentReport {
  double sigma = 0.0;
  std::vector<MomentRow> rows;
  /// Largest fitted C with moment <= (C k)^{2k} for log|E| and
  /// moment <= (C k)^{k} for log L_j, over 1 <= k <= k_max.
  double C_logE = 0.0;
  double C_logL = 0.0;
  std::int64_t n = 0;
};

/// Empirical 2k-th moment statistics from samples of log|E| and log L_j.
MomentReport moments_from_samples(int k_max, double sigma, const std::vector<LVector>& samples);

MomentReport moment_report(const RandomModel& model, int k_max, double sigma, const ModelConfig& cfg);

/// Truncated good set: |log|L_j||, |arg L_j| < M for all j and log|E| > -M^4.
bool in_good_set(const LVector& v, double M);

/// Fraction of samples in the good set with log|E| > tau.
double psi_fraction(double tau, double M, const std::vector<LVector>& samples);

double psi_rand(const RandomModel& model, double tau, double sigma, double M, const ModelConfig& cfg);

}  // namespace epstein

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "epstein/eval.hpp"
#include "epstein/randmodel.hpp"

namespace epstein {

struct TruncationConfig {
  double A = 2.0;
  /// M = A sqrt(log log T).
  double M(double T) const;
};

struct DiscrepancyReport {
  double sup_estimate = 0.0;
  /// Interior cut points per axis; every box edge is one of these or +-inf.
  std::vector<std::vector<double>> grid;
  std::int64_t n_emp = 0;
  std::int64_t n_model = 0;
  std::int64_t boxes_examined = 0;
  bool randomized = false;
};

/// Values of (log|L_j|, arg L_j) along vertical lines of one field, for the
/// combination E = sum a_j L_j attached to a form.
///
/// arg L_j(sigma + it) is the continuous continuation along the horizontal
/// segment from sigma = 1.25, where the branch is fixed by the truncated
/// Euler log-sum over p <= 10^4 (within 0.09 of log L_j there). This is the
/// same branch as continuing in from sigma = +infinity.
class LSampler {
 public:
  LSampler(const Field& field, const QuadForm& Q);

  /// Throws BranchAmbiguous when a zero of some L_j lies within 1e-6 of the
  /// continuation path.
  LVector sample(double sigma, double t, double eps = 1e-12) const;

  /// |sum_j a_j exp(log|L_j| + i arg L_j) - E(sigma + it)| for a vector
  /// produced at (sigma, t).
  double reconstruction_error(const LVector& v, double sigma, double t, double eps = 1e-12) const;

  const Field& field() const noexcept { return *field_; }
  const std::vector<double>& a() const noexcept { return a_; }
  int class_index() const noexcept { return class_index_; }

 private:
  const Field* field_;
  std::vector<double> a_;
  int class_index_;
  std::shared_ptr<const RandomModel> euler_;
};

LVector sample_L_vector(const LSampler& S, double sigma, double t, double eps = 1e-12);

/// t_i uniform in [T, 2T], a pure function of (seed, i).
double sample_t(std::uint64_t seed, std::int64_t i, double T);

/// Vectors at n seeded uniform t in [T, 2T]. A draw hitting BranchAmbiguous is
/// moved to t + 1e-3 (repeatedly); the number of such moves is reported.
std::vector<LVector> empirical_measure(const LSampler& S, double sigma, double T, std::int64_t n,
                                       std::uint64_t seed, std::int64_t* moved = nullptr);

/// Fraction of samples in S(T) with log|E| > tau.
double psi_T(double tau, double T, const TruncationConfig& trunc, const std::vector<LVector>& samples);

/// sup over axis-parallel boxes of |P_emp(B) - P_model(B)|, with box edges on
/// per-axis quantiles of the pooled samples. Exhaustive over the grid when the
/// number of boxes is at most max_exhaustive; otherwise random_boxes seeded
/// boxes on the grid.
DiscrepancyReport discrepancy(const std::vector<LVector>& emp, const std::vector<LVector>& model,
                              int grid_per_axis = 8, std::uint64_t seed = 1,
                              std::int64_t max_exhaustive = 20'000'000, std::int64_t random_boxes = 100'000);

/// (1/T) int_T^{2T} log|E(sigma + it)| dt by uniform sampling.
MCEstimate time_average_logE(const EpsteinFunction& E, double sigma, double T, std::int64_t n,
                             std::uint64_t seed);

/// log|E(sigma + it_i)| at the seeded points.
std::vector<double> time_samples_logE(const EpsteinFunction& E, double sigma, double T, std::int64_t n,
                                      std::uint64_t seed);

}  // namespace epstein

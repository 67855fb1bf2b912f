#pragma once

#include <cstdint>
#include <vector>

#include "epstein/eval.hpp"

namespace epstein {

struct Rectangle {
  double sigma1 = 0.6;
  double sigma2 = 0.9;
  double t1 = 2.0;
  double t2 = 50.0;
};

struct ZeroConfig {
  /// Edge perturbation: sigma1 moves inward, sigma2 and the t-edges outward.
  double delta = 1e-4;
  /// Lower t-edge treated as open: moved inward instead, so that
  /// [t1, tm] and (tm, t2] share one contour edge.
  bool open_lower = false;
  double eps = 1e-12;
  int max_perturbations = 6;
  /// Grid spacing for locate_zeros.
  double grid_dt = 0.05;
  double grid_dsigma = 0.02;
};

struct Zero {
  double beta = 0.0;
  double gamma = 0.0;
  int multiplicity = 1;
  double residual = 0.0;
};

struct ZeroList {
  std::vector<Zero> zeros;
  /// Candidates whose Newton iteration failed to converge.
  int unconverged = 0;
  std::int64_t grid_points = 0;

  int total_multiplicity() const;
};

struct CountResult {
  int count = 0;
  std::int64_t contour_points = 0;
  double min_abs_on_contour = 0.0;
  /// Total phase change / 2 pi before rounding.
  double winding = 0.0;
  /// Edge offset actually used (delta, or a larger multiple after retries).
  double perturbation = 0.0;
  /// The contour that was integrated.
  Rectangle contour;
};

/// Edges of the perturbed contour for a given offset.
Rectangle perturbed(const Rectangle& r, double offset, bool open_lower);

/// Argument-principle count of zeros inside the perturbed rectangle.
CountResult winding_count(const Rectangle& rect, const EpsteinFunction& E, const ZeroConfig& cfg = {});

/// Grid scan plus Newton refinement; zeros inside the same perturbed contour
/// that winding_count integrates.
ZeroList locate_zeros(const Rectangle& rect, const EpsteinFunction& E, const ZeroConfig& cfg = {});

/// N_E(sigma1, sigma2, T): zeros with sigma1 < beta <= sigma2, T <= gamma <= 2T.
CountResult count_N_E(double sigma1, double sigma2, double T, const EpsteinFunction& E,
                      const ZeroConfig& cfg = {});

/// Smallest sigma on a 0.01 grid with r(a) a^{-sigma} > sum_{n > a} r(n) n^{-sigma},
/// a = min_represented(Q); E has no zeros with real part >= this value.
double sigma0_bound(const QuadForm& Q);

struct LittlewoodReport {
  double sigma = 0.0;
  double sigma0 = 0.0;
  double T = 0.0;
  /// integral_sigma^sigma0 #{beta > u, T <= gamma <= 2T} du = sum (beta - sigma).
  double lhs = 0.0;
  /// (1 / 2 pi) [int log|E(sigma + it)| dt - int log|E(sigma0 + it)| dt].
  double rhs = 0.0;
  double abs_diff = 0.0;
  /// 0.5 log(2T).
  double slack = 0.0;
  /// (1 / 2 pi) [int arg E(u + 2iT) du - int arg E(u + iT) du], the boundary
  /// term dropped from the right-hand side.
  double arg_term = 0.0;
  /// |lhs - rhs - arg_term|; zero up to quadrature error.
  double identity_residual = 0.0;
  int zeros_located = 0;
  int zeros_counted = 0;
  std::vector<Zero> zeros;
};

LittlewoodReport littlewood_check(double sigma, double sigma0, double T, const EpsteinFunction& E,
                                  const ZeroConfig& cfg = {});

}  // namespace epstein

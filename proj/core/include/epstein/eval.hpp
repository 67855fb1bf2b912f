#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "epstein/characters.hpp"
#include "epstein/forms.hpp"
#include "epstein/specfun.hpp"

namespace epstein {

struct EvalConfig {
  /// Largest |Im s| the coefficient tables are sized for.
  double t_max = 600.0;
  /// Contour rotation parameter: the theta series is summed along the ray
  /// arg x = pi/2 - min(pi/2, c0/|t|).
  double c0 = 8.0;
};

struct EvalResult {
  cplx value;
  double abs_error_est = 0.0;
  std::int64_t terms_used = 0;
  /// d/ds of the value; only filled by evaluations that request it.
  cplx derivative;
};

/// A family of Dirichlet series F_k(s) = sum_i w_k[i] lambda_i^{-s} that share
/// the completed form Lambda_k(s) = (scale)^{-s} Gamma(s) F_k(s) and the
/// functional equation Lambda_k(s) = Lambda_k(1 - s), with a simple pole of
/// residue residue[k] at s = 1. All members are evaluated from one pass over
/// the incomplete gamma terms.
struct SeriesBundle {
  double scale = 1.0;
  std::vector<double> lambda;                // increasing, > 0
  std::vector<std::vector<double>> weights;  // [k][i]
  std::vector<double> residue;               // [k]
  /// sum_{lambda_i <= x} |w_k[i]| <= density * (sqrt(x) + rho)^2 for every k
  /// and every x, including x beyond the stored range.
  double density = 1.0;
  double rho = 1.0;
  /// Terms are known for lambda <= lambda_cap.
  double lambda_cap = 0.0;
};

/// Evaluates every member of the bundle at s with absolute error target eps.
/// Throws AccuracyNotMet when the stored terms do not reach far enough.
std::vector<EvalResult> evaluate_bundle(const SeriesBundle& bundle, cplx s, double eps,
                                        const EvalConfig& cfg, bool with_derivative = false);

/// Smallest lambda cutoff that meets eps at s.
double required_lambda(const SeriesBundle& bundle, cplx s, double eps, const EvalConfig& cfg);

/// Cutoff that covers every evaluation with |Im s| <= cfg.t_max, -1 <= Re s <= 3
/// and eps >= 1e-15 for a bundle with the given scale and tail constants.
double lambda_cap_for(double scale, double density, double rho, const EvalConfig& cfg);

/// E(s, Q) for one form, coefficient table sized by cfg.t_max.
class EpsteinFunction {
 public:
  explicit EpsteinFunction(const QuadForm& Q, EvalConfig cfg = {});

  EvalResult eval(cplx s, double eps = 1e-13, bool with_derivative = false) const;
  EvalResult operator()(cplx s, double eps = 1e-13) const { return eval(s, eps); }

  const QuadForm& form() const noexcept { return Q_; }
  const EvalConfig& config() const noexcept { return cfg_; }
  const SeriesBundle& bundle() const noexcept { return *bundle_; }

 private:
  QuadForm Q_;
  EvalConfig cfg_;
  std::shared_ptr<const SeriesBundle> bundle_;
};

/// All the L-functions of an imaginary quadratic field, evaluated together.
/// Bundle layout: classes 0..h-1, then the J basis characters (Euler product
/// coefficients), then the Dedekind zeta function.
class Field {
 public:
  explicit Field(std::int64_t D, EvalConfig cfg = {});

  struct Values {
    std::vector<EvalResult> epstein;  // per class
    std::vector<EvalResult> hecke;    // per basis character
    EvalResult dedekind;
  };

  Values evaluate_all(cplx s, double eps = 1e-13, bool with_derivative = false) const;

  EvalResult epstein(int class_index, cplx s, double eps = 1e-13) const;
  /// L(s, chi_j) from its Euler product coefficients.
  EvalResult hecke_L(int j, cplx s, double eps = 1e-13) const;
  /// L(s, chi_j) = (1/w) sum_A chi_j(A) E(s, Q_A).
  EvalResult hecke_L_class_sum(int j, cplx s, double eps = 1e-13) const;
  /// sum_j a_j L(s, chi_j).
  EvalResult epstein_via_characters(const QuadForm& Q, cplx s, double eps = 1e-13) const;
  EvalResult dedekind_zeta(cplx s, double eps = 1e-13) const;

  const QuadraticField& data() const noexcept { return data_; }
  const EvalConfig& config() const noexcept { return cfg_; }
  const SeriesBundle& bundle() const noexcept { return *bundle_; }
  std::int64_t disc() const noexcept { return data_.disc(); }

 private:
  QuadraticField data_;
  EvalConfig cfg_;
  std::shared_ptr<const SeriesBundle> bundle_;
};

/// Lattice sum over Q(m, n) <= R with an integral tail correction. Requires
/// Re s >= 1.1. The error estimate is a rigorous bound; it may exceed eps when
/// the cutoff needed is beyond max_points.
EvalResult epstein_direct(cplx s, const QuadForm& Q, double eps = 1e-10,
                          std::int64_t max_points = 4'000'000);

EvalResult epstein_smoothed(cplx s, const QuadForm& Q, double eps = 1e-13, EvalConfig cfg = {});

/// Real-analytic Eisenstein series sum' (Im z)^s / |m z + n|^{2s}.
EvalResult eisenstein(cplx z, cplx s, double eps = 1e-13, EvalConfig cfg = {});

/// Functional equation check for the completed function of E(s, Q):
/// |Lambda(s) - Lambda(1 - s)| / max(|Lambda(s)|, |Lambda(1 - s)|), with both
/// sides evaluated independently.
double functional_equation_residual(const EpsteinFunction& E, cplx s, double eps = 1e-13);

/// log of Lambda(s) = (sqrt|D| / 2 pi)^s Gamma(s) F(s) for a value F(s).
cplx log_completed(double scale, cplx s, cplx F);

}  // namespace epstein

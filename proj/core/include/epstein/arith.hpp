#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epstein/characters.hpp"
#include "epstein/cyclotomic.hpp"
#include "epstein/forms.hpp"

namespace epstein {

enum class SplittingType { Split, Inert, Ramified };

std::string to_string(SplittingType t);

struct PrimeData {
  std::int64_t p = 2;
  SplittingType type = SplittingType::Split;
  /// Split: the classes of the two primes above p (inverse to each other, may
  /// coincide). Ramified: the class of the prime above p. Inert: the class of
  /// the ideal (p) of norm p^2.
  std::vector<int> class_indices;
};

enum class SeriesKind { Epstein, Hecke, Dedekind };

/// Dirichlet coefficients c(1..n_max); values[0] is unused and zero. Every
/// table this library builds is real: Epstein counts, Dedekind ideal counts,
/// and class group Hecke coefficients (L(s, chi) = L(s, conj chi)).
struct CoeffTable {
  SeriesKind target = SeriesKind::Epstein;
  std::int64_t n_max = 0;
  std::vector<double> values;
};

/// Kronecker symbol (D / n) for n >= 1.
int kronecker(std::int64_t D, std::int64_t n);

std::vector<std::int64_t> primes_up_to(std::int64_t n);

/// Smallest prime factor of every m <= n (spf[0] = spf[1] = 0).
std::vector<std::int64_t> smallest_prime_factors(std::int64_t n);

PrimeData prime_data(std::int64_t p, const ClassGroup& G);

/// Per-prime data for every prime <= n, in increasing order.
std::vector<PrimeData> prime_data_table(std::int64_t n, const ClassGroup& G);

/// r_Q(n) = #{(x, y) != 0 : Q(x, y) = n} for n <= N, by a lattice scan.
std::vector<std::int64_t> representation_counts(const QuadForm& Q, std::int64_t N);

CoeffTable epstein_coeffs(const QuadForm& Q, std::int64_t N);

/// Number of integral ideals of norm n: sum over d | n of (D / d).
std::vector<std::int64_t> ideal_counts(std::int64_t D, std::int64_t N);

CoeffTable dedekind_coeffs(std::int64_t D, std::int64_t N);

/// Coefficients of L(s, chi) built from Euler factors.
CoeffTable hecke_coeffs(const HeckeCharacter& chi, const ClassGroup& G, std::int64_t N);

/// Same coefficients as exact elements of Z[zeta_L], L = group exponent.
std::vector<CyclotomicInt> hecke_coeffs_exact(const HeckeCharacter& chi, const ClassGroup& G,
                                              std::int64_t N);

/// Hecke coefficients for several characters sharing one prime table.
std::vector<CoeffTable> hecke_coeffs_many(const std::vector<HeckeCharacter>& chars,
                                          const ClassGroup& G, std::int64_t N);

}  // namespace epstein

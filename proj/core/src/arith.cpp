#include "epstein/arith.hpp"

#include <cmath>
#include <stdexcept>

#include "intmath.hpp"

namespace epstein {

std::string to_string(SplittingType t) {
  switch (t) {
    case SplittingType::Split: return "split";
    case SplittingType::Inert: return "inert";
    case SplittingType::Ramified: return "ramified";
  }
  return "?";
}

namespace {

int jacobi(std::int64_t a, std::int64_t n) {
  a = detail::mod_floor(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(std::int64_t D, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("kronecker: n must be >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    const std::int64_t r = detail::mod_floor(D, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(D, n);
}

std::vector<std::int64_t> smallest_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)) + 1, 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

PrimeData prime_data(std::int64_t p, const ClassGroup& G) {
  PrimeData pd;
  pd.p = p;
  const int k = kronecker(G.D.value, p);
  pd.type = k == 1 ? SplittingType::Split : (k == 0 ? SplittingType::Ramified : SplittingType::Inert);
  const std::int64_t norm = pd.type == SplittingType::Inert ? p * p : p;
  int found = -1;
  for (int i = 0; i < G.h(); ++i) {
    if (represents(G.elements[i], norm)) {
      found = i;
      break;
    }
  }
  if (found < 0) {
    throw std::logic_error("prime_data: no class represents the norm of a prime above " +
                           std::to_string(p));
  }
  pd.class_indices.push_back(found);
  if (pd.type == SplittingType::Split) pd.class_indices.push_back(G.inverse_index[found]);
  return pd;
}

std::vector<PrimeData> prime_data_table(std::int64_t n, const ClassGroup& G) {
  std::vector<PrimeData> out;
  for (std::int64_t p : primes_up_to(n)) out.push_back(prime_data(p, G));
  return out;
}

std::vector<std::int64_t> representation_counts(const QuadForm& Q, std::int64_t N) {
  std::vector<std::int64_t> r(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)) + 1, 0);
  if (N < 1) return r;
  const std::int64_t absD = -Q.disc();
  if (absD <= 0) throw std::invalid_argument("representation_counts: form not positive definite");
  const std::int64_t y_max = detail::isqrt(4 * Q.a * N / absD);
  for (std::int64_t y = -y_max; y <= y_max; ++y) {
    // a x^2 + b y x + c y^2 <= N
    const std::int64_t disc = 4 * Q.a * N - absD * y * y;
    if (disc < 0) continue;
    const std::int64_t root = detail::isqrt(disc);
    const std::int64_t lo = detail::floor_div(-Q.b * y - root, 2 * Q.a) - 1;
    const std::int64_t hi = detail::floor_div(-Q.b * y + root, 2 * Q.a) + 1;
    for (std::int64_t x = lo; x <= hi; ++x) {
      const std::int64_t v = Q.a * x * x + Q.b * x * y + Q.c * y * y;
      if (v >= 1 && v <= N) ++r[v];
    }
  }
  return r;
}

CoeffTable epstein_coeffs(const QuadForm& Q, std::int64_t N) {
  const auto r = representation_counts(Q, N);
  CoeffTable t;
  t.target = SeriesKind::Epstein;
  t.n_max = N;
  t.values.assign(r.begin(), r.end());
  return t;
}

std::vector<std::int64_t> ideal_counts(std::int64_t D, std::int64_t N) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)) + 1, 0);
  for (std::int64_t d = 1; d <= N; ++d) {
    const int k = kronecker(D, d);
    if (k == 0) continue;
    for (std::int64_t m = d; m <= N; m += d) out[m] += k;
  }
  return out;
}

CoeffTable dedekind_coeffs(std::int64_t D, std::int64_t N) {
  const auto r = ideal_counts(D, N);
  CoeffTable t;
  t.target = SeriesKind::Dedekind;
  t.n_max = N;
  t.values.assign(r.begin(), r.end());
  return t;
}

namespace {

// Values of chi at the classes attached to p, as angles in Z/L.
struct PrimeAngles {
  std::int64_t p;
  SplittingType type;
  std::int64_t alpha;  // numerator of chi(class) over L
};

// c(p^k) as an element of Z[zeta_L].
CyclotomicInt local_coeff_exact(const PrimeAngles& pa, int k, std::int64_t L) {
  CyclotomicInt c(L);
  switch (pa.type) {
    case SplittingType::Split:
      // sum_{i=0}^{k} alpha^i conj(alpha)^{k-i} = sum alpha^{2i-k}
      for (int i = 0; i <= k; ++i) c.add(RootOfUnity(pa.alpha * (2 * i - k), L));
      break;
    case SplittingType::Ramified:
      c.add(RootOfUnity(pa.alpha * k, L));
      break;
    case SplittingType::Inert:
      if (k % 2 == 0) c.add(RootOfUnity(pa.alpha * (k / 2), L));
      break;
  }
  return c;
}

double local_coeff(const PrimeAngles& pa, int k, std::int64_t L) {
  double c = 0.0;
  switch (pa.type) {
    case SplittingType::Split:
      for (int i = 0; i <= k; ++i) c += RootOfUnity(pa.alpha * (2 * i - k), L).value().real();
      break;
    case SplittingType::Ramified:
      c = RootOfUnity(pa.alpha * k, L).value().real();
      break;
    case SplittingType::Inert:
      if (k % 2 == 0) c = RootOfUnity(pa.alpha * (k / 2), L).value().real();
      break;
  }
  return c;
}

std::int64_t angle_num(const RootOfUnity& z, std::int64_t L) { return z.num() * (L / z.den()); }

template <class T, class Local>
std::vector<T> build_multiplicative(const std::vector<PrimeData>& pdata, std::int64_t N, T one,
                                    Local local) {
  const auto spf = smallest_prime_factors(N);
  std::vector<std::int64_t> prime_pos(static_cast<std::size_t>(N) + 1, -1);
  for (std::size_t i = 0; i < pdata.size(); ++i) prime_pos[pdata[i].p] = static_cast<std::int64_t>(i);
  std::vector<std::vector<T>> pow_cache(pdata.size());
  std::vector<T> c(static_cast<std::size_t>(N) + 1, one);
  for (std::int64_t n = 2; n <= N; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    const auto pos = static_cast<std::size_t>(prime_pos[p]);
    auto& cache = pow_cache[pos];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(local(pdata[pos], static_cast<int>(cache.size())));
    c[n] = c[m] * cache[k];
  }
  return c;
}

}  // namespace

std::vector<CyclotomicInt> hecke_coeffs_exact(const HeckeCharacter& chi, const ClassGroup& G,
                                              std::int64_t N) {
  const std::int64_t L = G.exponent();
  const auto pdata = prime_data_table(N, G);
  CyclotomicInt one(L);
  one.add(RootOfUnity(0, 1));
  auto c = build_multiplicative<CyclotomicInt>(pdata, N, one, [&](const PrimeData& pd, int k) {
    const PrimeAngles pa{pd.p, pd.type, angle_num(chi.values[pd.class_indices[0]], L)};
    return local_coeff_exact(pa, k, L);
  });
  c[0] = CyclotomicInt(L);
  return c;
}

std::vector<CoeffTable> hecke_coeffs_many(const std::vector<HeckeCharacter>& chars,
                                          const ClassGroup& G, std::int64_t N) {
  const std::int64_t L = G.exponent();
  const auto pdata = prime_data_table(N, G);
  std::vector<CoeffTable> out;
  for (const auto& chi : chars) {
    CoeffTable t;
    t.target = SeriesKind::Hecke;
    t.n_max = N;
    t.values = build_multiplicative<double>(pdata, N, 1.0, [&](const PrimeData& pd, int k) {
      const PrimeAngles pa{pd.p, pd.type, angle_num(chi.values[pd.class_indices[0]], L)};
      return local_coeff(pa, k, L);
    });
    t.values[0] = 0.0;
    out.push_back(std::move(t));
  }
  return out;
}

CoeffTable hecke_coeffs(const HeckeCharacter& chi, const ClassGroup& G, std::int64_t N) {
  return hecke_coeffs_many({chi}, G, N).front();
}

}  // namespace epstein

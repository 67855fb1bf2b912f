#include "epstein/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace epstein {

int ClassGroup::index_of(const QuadForm& Q) const {
  const QuadForm r = reduce(Q);
  if (r.disc() != D.value) throw std::invalid_argument("index_of: discriminant mismatch");
  for (int i = 0; i < h(); ++i) {
    if (elements[i] == r) return i;
  }
  throw std::invalid_argument("index_of: form not primitive");
}

int ClassGroup::order_of(int i) const {
  int x = i;
  int k = 1;
  while (x != 0) {
    x = table[x][i];
    ++k;
  }
  return k;
}

int roots_of_unity_count(const Discriminant& D) {
  if (D.value >= 0) throw std::invalid_argument("roots_of_unity_count: D must be negative");
  if (D.value == -3) return 6;
  if (D.value == -4) return 4;
  return 2;
}

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int power(const ClassGroup& G, int x, std::int64_t k) {
  int r = 0;
  for (std::int64_t i = 0; i < k; ++i) r = G.table[r][x];
  return r;
}

// Basis of the p-Sylow subgroup, orders nonincreasing. Each step takes the
// element of largest order modulo the span so far and shifts it by a span
// element so that its order equals its quotient order.
std::vector<std::pair<int, std::int64_t>> sylow_basis(const ClassGroup& G, std::int64_t p) {
  const int h = G.h();
  std::vector<int> sylow;
  for (int i = 0; i < h; ++i) {
    std::int64_t o = G.order_of(i);
    while (o % p == 0) o /= p;
    if (o == 1) sylow.push_back(i);
  }
  std::vector<char> in_span(h, 0);
  in_span[0] = 1;
  std::vector<int> span{0};
  std::vector<std::pair<int, std::int64_t>> gens;
  while (span.size() < sylow.size()) {
    int best = -1;
    std::int64_t best_q = 0;
    for (int x : sylow) {
      std::int64_t q = 1;
      int y = x;
      while (!in_span[y]) {
        y = G.table[y][x];
        ++q;
      }
      if (q > best_q) {
        best_q = q;
        best = x;
      }
    }
    int chosen = -1;
    for (int s : span) {
      const int cand = G.table[best][s];
      if (G.order_of(cand) == best_q) {
        chosen = cand;
        break;
      }
    }
    if (chosen < 0) throw std::logic_error("class_group: Sylow basis adjustment failed");
    gens.emplace_back(chosen, best_q);
    std::vector<int> next;
    next.reserve(span.size() * static_cast<std::size_t>(best_q));
    int g = 0;
    for (std::int64_t k = 0; k < best_q; ++k) {
      for (int s : span) next.push_back(G.table[s][g]);
      g = G.table[g][chosen];
    }
    for (int x : next) in_span[x] = 1;
    span = std::move(next);
  }
  return gens;
}

}  // namespace

ClassGroup class_group(const Discriminant& D) {
  if (!D.fundamental || !is_fundamental_discriminant(D.value)) {
    throw std::invalid_argument("class_group: discriminant must be fundamental");
  }
  ClassGroup G;
  G.D = D;
  G.elements = enumerate_classes(D);
  const int h = G.h();
  std::map<QuadForm, int> idx;
  for (int i = 0; i < h; ++i) idx[G.elements[i]] = i;
  G.table.assign(h, std::vector<int>(h, 0));
  for (int i = 0; i < h; ++i) {
    for (int j = i; j < h; ++j) {
      const int k = idx.at(compose(G.elements[i], G.elements[j]));
      G.table[i][j] = k;
      G.table[j][i] = k;
    }
  }
  G.inverse_index.assign(h, 0);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      if (G.table[i][j] == 0) G.inverse_index[i] = j;
    }
  }

  // Primary parts, then recombine the k-th largest factor of every p into one
  // cyclic factor.
  std::vector<std::vector<std::pair<int, std::int64_t>>> parts;
  std::size_t rank = 0;
  for (std::int64_t p : prime_factors(h)) {
    parts.push_back(sylow_basis(G, p));
    rank = std::max(rank, parts.back().size());
  }
  for (std::size_t k = 0; k < rank; ++k) {
    int gen = 0;
    std::int64_t order = 1;
    for (const auto& part : parts) {
      if (k < part.size()) {
        gen = G.table[gen][part[k].first];
        order *= part[k].second;
      }
    }
    G.decomposition.emplace_back(gen, order);
  }
  std::reverse(G.decomposition.begin(), G.decomposition.end());

  const std::size_t r = G.decomposition.size();
  G.coords.assign(h, std::vector<std::int64_t>(r, 0));
  std::vector<char> seen(h, 0);
  std::vector<std::int64_t> e(r, 0);
  for (int count = 0; count < h; ++count) {
    int x = 0;
    for (std::size_t k = 0; k < r; ++k) x = G.table[x][power(G, G.decomposition[k].first, e[k])];
    if (seen[x]) throw std::logic_error("class_group: decomposition is not a basis");
    seen[x] = 1;
    G.coords[x] = e;
    for (std::size_t k = r; k-- > 0;) {
      if (++e[k] < G.decomposition[k].second) break;
      e[k] = 0;
    }
  }
  return G;
}

std::vector<HeckeCharacter> character_table(const ClassGroup& G) {
  const int h = G.h();
  const std::size_t r = G.decomposition.size();
  const std::int64_t L = G.exponent();
  std::vector<HeckeCharacter> out;
  out.reserve(h);
  std::vector<std::int64_t> k(r, 0);
  for (int idx = 0; idx < h; ++idx) {
    HeckeCharacter chi;
    chi.index = idx;
    chi.exponents = k;
    chi.values.reserve(h);
    for (int x = 0; x < h; ++x) {
      std::int64_t num = 0;
      for (std::size_t i = 0; i < r; ++i) {
        num += k[i] * G.coords[x][i] * (L / G.decomposition[i].second);
      }
      chi.values.emplace_back(num % L, L);
      if (!chi.values.back().is_real()) chi.is_real = false;
    }
    out.push_back(std::move(chi));
    for (std::size_t i = r; i-- > 0;) {
      if (++k[i] < G.decomposition[i].second) break;
      k[i] = 0;
    }
  }
  return out;
}

int conjugate_index(const ClassGroup& G, const std::vector<HeckeCharacter>& table, int i) {
  std::vector<std::int64_t> k = table[i].exponents;
  for (std::size_t c = 0; c < k.size(); ++c) {
    k[c] = (G.decomposition[c].second - k[c]) % G.decomposition[c].second;
  }
  // Lexicographic mixed-radix index.
  int idx = 0;
  for (std::size_t c = 0; c < k.size(); ++c) {
    idx = idx * static_cast<int>(G.decomposition[c].second) + static_cast<int>(k[c]);
  }
  return idx;
}

CharacterBasis select_basis(const ClassGroup& G, const std::vector<HeckeCharacter>& table) {
  CharacterBasis basis;
  for (const auto& chi : table) {
    if (chi.is_real) basis.chars.push_back(chi);
  }
  for (const auto& chi : table) {
    if (!chi.is_real && conjugate_index(G, table, chi.index) > chi.index) basis.chars.push_back(chi);
  }
  basis.J = static_cast<int>(basis.chars.size());
  return basis;
}

CoefficientVector coefficients(const ClassGroup& G, const CharacterBasis& basis, const QuadForm& Q) {
  CoefficientVector cv;
  cv.class_index = G.index_of(Q);
  const double scale = static_cast<double>(roots_of_unity_count(G.D)) / G.h();
  cv.a.reserve(basis.chars.size());
  for (const auto& chi : basis.chars) {
    const double re = chi.values[cv.class_index].value().real();
    cv.a.push_back(chi.is_real ? scale * re : 2.0 * scale * re);
  }
  return cv;
}

QuadraticField QuadraticField::build(std::int64_t D) {
  QuadraticField F;
  F.group = class_group(make_discriminant(D));
  F.table = character_table(F.group);
  F.basis = select_basis(F.group, F.table);
  F.w = roots_of_unity_count(F.group.D);
  return F;
}

}  // namespace epstein

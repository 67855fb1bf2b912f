#pragma once

#include <cstdint>
#include <vector>

#include "epstein/cyclotomic.hpp"
#include "epstein/forms.hpp"

namespace epstein {

/// Form class group of a fundamental discriminant. Element 0 is the principal
/// class.
struct ClassGroup {
  Discriminant D;
  std::vector<QuadForm> elements;
  /// table[i][j] = index of elements[i] * elements[j].
  std::vector<std::vector<int>> table;
  /// (generator index, order) with orders d_1 | d_2 | ... ; empty for h = 1.
  std::vector<std::pair<int, std::int64_t>> decomposition;
  /// coords[i][k] = exponent of generator k in elements[i].
  std::vector<std::vector<std::int64_t>> coords;
  std::vector<int> inverse_index;

  int h() const noexcept { return static_cast<int>(elements.size()); }
  /// Exponent of the group (largest invariant factor, 1 for the trivial group).
  std::int64_t exponent() const noexcept {
    return decomposition.empty() ? 1 : decomposition.back().second;
  }
  /// Index of the class of Q (reduced first). Throws std::invalid_argument if Q
  /// has a different discriminant.
  int index_of(const QuadForm& Q) const;
  int order_of(int i) const;
};

struct HeckeCharacter {
  std::vector<RootOfUnity> values;
  bool is_real = true;
  /// Exponent tuple k: chi(g_i) = exp(2 pi i k_i / d_i).
  std::vector<std::int64_t> exponents;
  int index = 0;

  std::complex<double> operator()(int class_index) const { return values[class_index].value(); }
};

struct CharacterBasis {
  std::vector<HeckeCharacter> chars;
  int J = 0;
};

struct CoefficientVector {
  std::vector<double> a;
  int class_index = 0;
};

/// Number of roots of unity in Q(sqrt D).
int roots_of_unity_count(const Discriminant& D);

/// Throws std::invalid_argument for non-fundamental D.
ClassGroup class_group(const Discriminant& D);

/// All h characters, trivial first, ordered lexicographically by exponent tuple.
std::vector<HeckeCharacter> character_table(const ClassGroup& G);

/// Index in the table of the conjugate character.
int conjugate_index(const ClassGroup& G, const std::vector<HeckeCharacter>& table, int i);

/// One character per conjugate pair: real characters by table index, then the
/// complex ones whose conjugate has a larger index.
CharacterBasis select_basis(const ClassGroup& G, const std::vector<HeckeCharacter>& table);

CoefficientVector coefficients(const ClassGroup& G, const CharacterBasis& basis, const QuadForm& Q);

/// Everything derived from a fundamental discriminant, built once.
struct QuadraticField {
  ClassGroup group;
  std::vector<HeckeCharacter> table;
  CharacterBasis basis;
  int w = 2;

  static QuadraticField build(std::int64_t D);
  std::int64_t disc() const noexcept { return group.D.value; }
  int h() const noexcept { return group.h(); }
  int J() const noexcept { return basis.J; }
};

}  // namespace epstein

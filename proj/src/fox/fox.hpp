#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "algebra/character.hpp"
#include "algebra/laurent.hpp"
#include "presentation/presentation.hpp"

namespace jumploci {

// Element of the rational group ring of a free group.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  static GroupRingElement of(const Word& w, const Rational& c = 1);
  static GroupRingElement one() { return of(Word()); }

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  void add(const Word& w, const Rational& c);
  std::map<Word, Rational> terms_;
};

// d w / d x_i. Throws std::out_of_range if i >= ngens.
GroupRingElement fox_derivative(const Word& w, std::size_t i, std::size_t ngens);

// Abelianized Fox Jacobian. Variables: b1 free coordinates t_1..t_b1 of the
// character torus, then one variable per cyclic torsion factor of H_1 (with
// the factor's order; only roots of unity of that order are valid values).
struct AlexanderMatrix {
  LaurentMatrix entries;  // relators x generators
  AbelianizationData abel;
  std::vector<std::string> var_names;
  std::vector<std::uint64_t> torsion_orders;
  std::size_t num_generators = 0;

  std::size_t nvars() const { return abel.b1 + torsion_orders.size(); }
  std::size_t num_free_vars() const { return abel.b1; }
};

// Image of a group-ring element (or a word) in the Laurent ring of H_1.
Exponent abelianize_word(const Word& w, const AbelianizationData& abel);
LaurentPoly abelianize(const GroupRingElement& x, const AbelianizationData& abel);

AlexanderMatrix alexander_matrix(const Presentation& p);

// Throws std::invalid_argument if rho is not a character of H_1 in the
// matrix's coordinates (wrong length, or a torsion coordinate of wrong order).
void check_character(const AlexanderMatrix& a, const CharacterPoint& rho);

// dim H^1(G; C_rho): b1 at the trivial character, else n - 1 - rank A(rho).
std::size_t h1_dim_at(const Presentation& p, const AlexanderMatrix& a, const CharacterPoint& rho);

// Character with prescribed values on the generators, expressed in the
// matrix's coordinates.
CharacterPoint character_from_generator_images(const AlexanderMatrix& a, const std::vector<Rational>& images);
CharacterPoint character_from_generator_images(const AlexanderMatrix& a, std::uint64_t prime,
                                               std::uint64_t root_order,
                                               const std::vector<std::uint64_t>& images);

// Random nonzero rational, numerator and denominator bounded by `bound`.
Rational random_rational(std::mt19937_64& rng, int bound = 100);
// Random rational character with torsion coordinates 1, never trivial.
CharacterPoint random_rational_character(const AlexanderMatrix& a, std::mt19937_64& rng, int bound = 100);

}  // namespace jumploci

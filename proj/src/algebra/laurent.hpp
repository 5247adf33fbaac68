#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algebra/matrix.hpp"
#include "algebra/prime_field.hpp"

namespace jumploci {

using Exponent = std::vector<std::int32_t>;

struct Term {
  Exponent exp;
  Rational coeff;
};

// Multivariate Laurent polynomial over Q. Terms are kept sorted by exponent,
// lexicographically descending, with no zero coefficients; two polynomials are
// equal iff their term lists are.
class LaurentPoly {
 public:
  explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Rational& c);
  static LaurentPoly monomial(std::size_t nvars, Exponent exp, const Rational& c = 1);
  static LaurentPoly variable(std::size_t nvars, std::size_t index, std::int32_t power = 1);
  // Builds from unsorted terms, merging duplicates.
  static LaurentPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading_term() const { return terms_.front(); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& g);
  LaurentPoly& operator-=(const LaurentPoly& g);
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly shifted(const Exponent& by) const;  // multiply by the monomial t^by

  // Canonical associate: monomial content removed (minimum exponent 0 in
  // every variable), coefficients coprime integers, leading coefficient > 0.
  LaurentPoly normalized() const;

  std::string to_string(const std::vector<std::string>& names) const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

 private:
  std::size_t nvars_;
  std::vector<Term> terms_;
};

using LaurentMatrix = Matrix<LaurentPoly>;

// Throws std::invalid_argument on nvars mismatch.
LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g);

// Exact quotient f / g when it exists as a Laurent polynomial; nullopt
// otherwise (or when g is zero).
std::optional<LaurentPoly> exact_divide(const LaurentPoly& f, const LaurentPoly& g);

// Composition with a monomial map: variable i of f goes to t^images[i] in a
// ring with target_nvars variables.
LaurentPoly laurent_substitute(const LaurentPoly& f, std::span<const Exponent> images,
                               std::size_t target_nvars);

// Sparse Laurent polynomial with F_p coefficients; only what the translated
// substitution needs.
struct ModPLaurent {
  std::size_t nvars = 0;
  std::map<Exponent, std::uint64_t> terms;
  bool is_zero() const { return terms.empty(); }
};

// Same as laurent_substitute, but variable i goes to scales[i] * t^images[i]
// with scales in F_p (typically powers of a root of unity).
ModPLaurent laurent_substitute_mod_p(const LaurentPoly& f, std::span<const Exponent> images,
                                     std::span<const std::uint64_t> scales,
                                     const PrimeField& field, std::size_t target_nvars);

Rational rational_pow(const Rational& base, std::int64_t exp);

Rational laurent_evaluate(const LaurentPoly& f, std::span<const Rational> point);
std::uint64_t laurent_evaluate(const LaurentPoly& f, std::span<const std::uint64_t> point,
                               const PrimeField& field);

}  // namespace jumploci

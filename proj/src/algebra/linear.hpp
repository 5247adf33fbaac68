#pragma once

#include <cstdint>
#include <vector>

#include "algebra/character.hpp"
#include "algebra/laurent.hpp"
#include "algebra/matrix.hpp"
#include "algebra/prime_field.hpp"

namespace jumploci {

// Fraction-free (Bareiss) elimination; exact.
std::size_t rank(const IntMatrix& a);
// Rows are cleared of denominators, then Bareiss.
std::size_t rank(const RationalMatrix& a);
std::size_t rank_mod_p(const Matrix<std::uint64_t>& a, const PrimeField& field);

// Basis of {x : A x = 0}, one vector per free column of the reduced row
// echelon form.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a);
// Same vectors scaled to primitive integer vectors.
std::vector<std::vector<Integer>> integer_nullspace(const RationalMatrix& a);
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

RationalMatrix to_rational(const IntMatrix& a);

// Rank of the scalar matrix obtained by evaluating every entry at rho.
std::size_t matrix_rank_at(const LaurentMatrix& m, const CharacterPoint& rho);

// All size x size minors, normalized (LaurentPoly::normalized), zeros and
// duplicates dropped, in canonical order. Throws std::out_of_range when
// size is 0 or exceeds min(rows, cols).
std::vector<LaurentPoly> minors(const LaurentMatrix& m, std::size_t size);

LaurentPoly determinant(const LaurentMatrix& m);

// Rank over the fraction field of the Laurent ring (symbolic Bareiss).
std::size_t generic_rank(const LaurentMatrix& m);

}  // namespace jumploci

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "algebra/matrix.hpp"
#include "presentation/presentation.hpp"

namespace jumploci {

// Noncommutative monomial X_{i1} X_{i2} ... as a sequence of generator indices.
using NcWord = std::vector<std::uint8_t>;
// Truncated noncommutative power series, sparse.
using NcSeries = std::map<NcWord, Rational>;

constexpr unsigned kMaxMagnusDegree = 6;

NcSeries nc_multiply(const NcSeries& a, const NcSeries& b, unsigned degree);
// Magnus image of w: x_i -> 1 + X_i, truncated at total degree `degree`.
NcSeries magnus_of_word(const Word& w, unsigned degree);

struct MagnusExpansion {
  unsigned degree = 0;
  // per relator, the coefficients of (r - 1)
  std::vector<NcSeries> relators;
};

// Throws std::invalid_argument unless 2 <= degree <= 6.
MagnusExpansion magnus_expand(const Presentation& p, unsigned degree = 4);

// Homogeneous part of a series.
NcSeries degree_part(const NcSeries& s, unsigned d);

// Cup product H^1 x H^1 -> H^2 of the presentation 2-complex, in the free
// H^1 basis of the abelianization and a basis of H^2 = coker(d^1).
class CupTensor {
 public:
  CupTensor(std::size_t b1, std::size_t h2_dim, std::vector<Rational> mu);

  std::size_t b1() const { return b1_; }
  std::size_t h2_dim() const { return h2_; }
  // coordinate h of e_i cup e_j
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t h) const {
    return mu_[(i * b1_ + j) * h2_ + h];
  }
  // u cup v as a vector in H^2
  std::vector<Rational> cup(const std::vector<Rational>& u, const std::vector<Rational>& v) const;
  // matrix of v -> u cup v (h2 x b1)
  RationalMatrix left_multiplication(const std::vector<Rational>& u) const;

 private:
  std::size_t b1_;
  std::size_t h2_;
  std::vector<Rational> mu_;
};

CupTensor cup_tensor(const Presentation& p);

}  // namespace jumploci

#include "fox/magnus.hpp"

#include <stdexcept>

#include "algebra/linear.hpp"

namespace jumploci {

NcSeries nc_multiply(const NcSeries& a, const NcSeries& b, unsigned degree) {
  NcSeries out;
  for (const auto& [u, c] : a) {
    if (u.size() > degree) continue;
    for (const auto& [v, d] : b) {
      if (u.size() + v.size() > degree) continue;
      NcWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      auto [it, inserted] = out.try_emplace(std::move(w), c * d);
      if (!inserted) {
        it->second += c * d;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

namespace {

// (1 + X)^e truncated; generalized binomial coefficients for negative e.
NcSeries power_series(std::uint8_t gen, std::int64_t e, unsigned degree) {
  NcSeries s;
  Rational binom = 1;
  NcWord w;
  for (unsigned k = 0; k <= degree; ++k) {
    if (binom != 0) s[w] = binom;
    binom *= Rational(e - static_cast<std::int64_t>(k), static_cast<long>(k + 1));
    binom.canonicalize();
    w.push_back(gen);
  }
  return s;
}

}  // namespace

NcSeries magnus_of_word(const Word& w, unsigned degree) {
  NcSeries acc{{NcWord{}, Rational(1)}};
  for (const auto& s : w.syllables()) {
    if (s.gen > 255) throw std::out_of_range("Magnus expansion supports at most 256 generators");
    acc = nc_multiply(acc, power_series(static_cast<std::uint8_t>(s.gen), s.exp, degree), degree);
  }
  return acc;
}

MagnusExpansion magnus_expand(const Presentation& p, unsigned degree) {
  if (degree < 2 || degree > kMaxMagnusDegree) throw std::invalid_argument("Magnus degree must be in [2, 6]");
  MagnusExpansion m;
  m.degree = degree;
  for (const auto& r : p.relators()) {
    NcSeries s = magnus_of_word(r, degree);
    s.erase(NcWord{});
    m.relators.push_back(std::move(s));
  }
  return m;
}

NcSeries degree_part(const NcSeries& s, unsigned d) {
  NcSeries out;
  for (const auto& [w, c] : s)
    if (w.size() == d) out.emplace(w, c);
  return out;
}

CupTensor::CupTensor(std::size_t b1, std::size_t h2_dim, std::vector<Rational> mu)
    : b1_(b1), h2_(h2_dim), mu_(std::move(mu)) {
  if (mu_.size() != b1_ * b1_ * h2_) throw std::invalid_argument("cup tensor size mismatch");
}

std::vector<Rational> CupTensor::cup(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
  std::vector<Rational> out(h2_, Rational(0));
  for (std::size_t i = 0; i < b1_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < b1_; ++j) {
      if (v[j] == 0) continue;
      for (std::size_t h = 0; h < h2_; ++h) out[h] += u[i] * v[j] * (*this)(i, j, h);
    }
  }
  return out;
}

RationalMatrix CupTensor::left_multiplication(const std::vector<Rational>& u) const {
  if (u.size() != b1_) throw std::invalid_argument("cohomology class has the wrong length");
  RationalMatrix m(h2_, b1_, Rational(0));
  for (std::size_t i = 0; i < b1_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < b1_; ++j)
      for (std::size_t h = 0; h < h2_; ++h) m(h, j) += u[i] * (*this)(i, j, h);
  }
  return m;
}

CupTensor cup_tensor(const Presentation& p) {
  const auto abel = abelianization(p);
  const std::size_t n = p.num_generators(), m = p.num_relators(), b1 = abel.b1;
  // H^2 coordinates: functionals on C^2 = Q^m killing the image of d^1 = E
  const auto projection = nullspace(to_rational(abel.exponent_matrix.transpose()));
  const std::size_t h2 = projection.size();
  std::vector<Rational> mu(b1 * b1 * h2, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    const NcSeries quad = degree_part(magnus_of_word(p.relators()[r], 2), 2);
    // antisymmetrized degree-2 coefficients on generators
    RationalMatrix anti(n, n, Rational(0));
    for (const auto& [w, c] : quad) {
      anti(w[0], w[1]) += c / 2;
      anti(w[1], w[0]) -= c / 2;
    }
    for (std::size_t a = 0; a < b1; ++a)
      for (std::size_t b = 0; b < b1; ++b) {
        Rational v = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (abel.basis_map(i, a) == 0) continue;
          for (std::size_t l = 0; l < n; ++l)
            if (abel.basis_map(l, b) != 0)
              v += Rational(abel.basis_map(i, a) * abel.basis_map(l, b)) * anti(i, l);
        }
        if (v == 0) continue;
        for (std::size_t h = 0; h < h2; ++h) mu[(a * b1 + b) * h2 + h] += projection[h][r] * v;
      }
  }
  return CupTensor(b1, h2, std::move(mu));
}

}  // namespace jumploci

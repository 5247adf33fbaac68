#include "algebra/linear.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace jumploci {

std::size_t rank(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::size_t rank(const RationalMatrix& a) {
  IntMatrix m(a.rows(), a.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational v = a(i, j) * l;
      m(i, j) = v.get_num();
    }
  }
  return rank(m);
}

std::size_t rank_mod_p(const Matrix<std::uint64_t>& a, const PrimeField& f) {
  Matrix<std::uint64_t> m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    const std::uint64_t inv = f.inv(m(r, c));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const std::uint64_t factor = f.mul(m(i, c), inv);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Rational s = x * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

std::vector<std::vector<Integer>> integer_nullspace(const RationalMatrix& a) {
  std::vector<std::vector<Integer>> out;
  for (const auto& v : nullspace(a)) out.push_back(primitive_integer_vector(v));
  return out;
}

RationalMatrix to_rational(const IntMatrix& a) {
  RationalMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Rational(a(i, j));
  return m;
}

std::size_t matrix_rank_at(const LaurentMatrix& m, const CharacterPoint& rho) {
  for (const auto& e : m.data())
    if (e.nvars() != rho.size())
      throw std::invalid_argument("character length does not match the Laurent ring");
  if (rho.is_rational()) {
    RationalMatrix v(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = laurent_evaluate(m(i, j), rho.rational_coords());
    return rank(v);
  }
  const PrimeField f = rho.field();
  Matrix<std::uint64_t> v(m.rows(), m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = laurent_evaluate(m(i, j), rho.mod_p_coords(), f);
  return rank_mod_p(v, f);
}

namespace {

std::size_t ring_size(const LaurentMatrix& m) {
  return m.data().empty() ? 0 : m.data().front().nvars();
}

LaurentPoly divide_or_throw(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = exact_divide(f, g);
  if (!q) throw std::logic_error("Bareiss step was not an exact division");
  return *std::move(q);
}

}  // namespace

LaurentPoly determinant(const LaurentMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  const std::size_t nv = ring_size(a);
  if (n == 0) return LaurentPoly::constant(nv, 1);
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  LaurentMatrix m = a;
  LaurentPoly prev = LaurentPoly::constant(nv, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k).is_zero()) ++piv;
    if (piv == n) return LaurentPoly(nv);
    if (piv != k) {
      m.swap_rows(k, piv);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = divide_or_throw(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = LaurentPoly(nv);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

std::size_t generic_rank(const LaurentMatrix& a) {
  LaurentMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t nv = ring_size(a);
  std::size_t r = 0;
  LaurentPoly prev = LaurentPoly::constant(nv, 1);
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m(i, j) = divide_or_throw(m(r, c) * m(i, j) - m(i, c) * m(r, j), prev);
      m(i, c) = LaurentPoly(nv);
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::vector<LaurentPoly> minors(const LaurentMatrix& m, std::size_t size) {
  if (size == 0 || size > std::min(m.rows(), m.cols()))
    throw std::out_of_range("minor size out of range");
  std::set<LaurentPoly> found;
  std::vector<std::size_t> rsel(size), csel(size);
  std::vector<bool> rmask(m.rows(), false);
  std::fill(rmask.begin(), rmask.begin() + static_cast<std::ptrdiff_t>(size), true);
  do {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (rmask[i]) rsel[k++] = i;
    std::vector<bool> cmask(m.cols(), false);
    std::fill(cmask.begin(), cmask.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      k = 0;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (cmask[j]) csel[k++] = j;
      LaurentMatrix sub(size, size);
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) sub(i, j) = m(rsel[i], csel[j]);
      LaurentPoly d = determinant(sub);
      if (!d.is_zero()) found.insert(d.normalized());
    } while (std::prev_permutation(cmask.begin(), cmask.end()));
  } while (std::prev_permutation(rmask.begin(), rmask.end()));
  return {found.begin(), found.end()};
}

}  // namespace jumploci

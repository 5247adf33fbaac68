#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "algebra/linear.hpp"
#include "algebra/smith.hpp"
#include "jumploci/jumploci.hpp"

namespace jumploci {

bool CharVarIdeal::is_unit() const {
  return gens.size() == 1 && gens.front().is_constant() && !gens.front().is_zero();
}

CharVarIdeal charvar_ideal(const AlexanderMatrix& a, std::size_t k) {
  if (k == 0) throw std::invalid_argument("jump level must be at least 1");
  CharVarIdeal ideal;
  ideal.k = k;
  ideal.nvars = a.nvars();
  ideal.includes_identity = a.abel.b1 >= k;
  const std::size_t n = a.num_generators;
  if (n <= k) {
    // dim H^1 <= n - 1 < k at every nontrivial character
    ideal.gens.push_back(LaurentPoly::constant(a.nvars(), 1));
    return ideal;
  }
  const std::size_t size = n - k;
  // fewer relators than the minor size: every minor is empty, rank <= m <= n-1-k
  if (a.entries.rows() < size) return ideal;
  ideal.gens = minors(a.entries, size);
  for (const auto& g : ideal.gens)
    if (g.is_constant()) {
      ideal.gens.assign(1, LaurentPoly::constant(a.nvars(), 1));
      break;
    }
  return ideal;
}

bool charvar_member(const CharVarIdeal& ideal, const CharacterPoint& rho) {
  if (rho.size() != ideal.nvars) throw std::invalid_argument("character has the wrong number of coordinates");
  if (rho.is_trivial()) return ideal.includes_identity;
  if (rho.is_rational()) {
    for (const auto& g : ideal.gens)
      if (laurent_evaluate(g, rho.rational_coords()) != 0) return false;
    return true;
  }
  const PrimeField f = rho.field();
  for (const auto& g : ideal.gens)
    if (laurent_evaluate(g, rho.mod_p_coords(), f) != 0) return false;
  return true;
}

namespace {

std::vector<Exponent> parametrization(const SubtorusComponent& s, std::size_t nvars) {
  const std::size_t d = s.dim(), nfree = s.directions.cols();
  std::vector<Exponent> images(nvars, Exponent(d, 0));
  for (std::size_t j = 0; j < nfree; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      const Integer& v = s.directions(i, j);
      if (!v.fits_sint_p()) throw std::overflow_error("subtorus direction exceeds machine range");
      images[j][i] = static_cast<std::int32_t>(v.get_si());
    }
  return images;
}

}  // namespace

bool subtorus_verify(const CharVarIdeal& ideal, const SubtorusComponent& s) {
  if (s.directions.cols() > ideal.nvars) throw std::invalid_argument("subtorus lives in a larger torus");
  if (s.translate && s.translate->exponents.size() != ideal.nvars)
    throw std::invalid_argument("translate has the wrong number of coordinates");
  const bool trivial_translate =
      !s.translate || std::all_of(s.translate->exponents.begin(), s.translate->exponents.end(),
                                  [&](std::int64_t e) { return e % static_cast<std::int64_t>(s.translate->order) == 0; });
  if (s.dim() == 0 && trivial_translate) return ideal.includes_identity;
  if (ideal.is_zero()) return true;
  if (ideal.is_unit()) return false;

  const auto images = parametrization(s, ideal.nvars);
  if (trivial_translate) {
    for (const auto& g : ideal.gens)
      if (!laurent_substitute(g, images, s.dim()).is_zero()) return false;
    return true;
  }
  const std::uint64_t order = s.translate->order;
  const PrimeField f(prime_for_root_order(order));
  const auto zeta = f.root_of_unity(order);
  std::vector<std::uint64_t> scales;
  for (auto e : s.translate->exponents) scales.push_back(f.pow(zeta, e));
  for (const auto& g : ideal.gens)
    if (!laurent_substitute_mod_p(g, images, scales, f, s.dim()).is_zero()) return false;
  return true;
}

SubtorusComponent exp_map(const LinearComponent& e) {
  SubtorusComponent s;
  s.directions = e.basis;
  s.k = e.k_max;
  return s;
}

namespace {

std::size_t stacked_rank(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix s(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, j) = b(i, j);
  return rank(s);
}

// translate as a point of (Q/Z)^n
std::vector<Rational> translate_angles(const SubtorusComponent& s, std::size_t n) {
  std::vector<Rational> v(n, Rational(0));
  if (!s.translate) return v;
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = Rational(s.translate->exponents[j], static_cast<long>(s.translate->order));
    v[j].canonicalize();
  }
  return v;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

bool subtorus_contains(const SubtorusComponent& b, const SubtorusComponent& a) {
  if (a.directions.cols() != b.directions.cols()) return false;
  const std::size_t nfree = a.directions.cols();
  if (a.dim() > 0 && stacked_rank(b.directions, a.directions) != rank(b.directions)) return false;
  std::size_t n = nfree;
  if (a.translate) n = a.translate->exponents.size();
  if (b.translate) n = b.translate->exponents.size();
  const auto va = translate_angles(a, n), vb = translate_angles(b, n);
  std::vector<Rational> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = va[j] - vb[j];
  // torsion coordinates are not moved by the directions
  for (std::size_t j = nfree; j < n; ++j)
    if (!is_integer(v[j])) return false;
  // free part: v in span_Q(directions of b) + Z^nfree
  if (b.dim() == 0) {
    for (std::size_t j = 0; j < nfree; ++j)
      if (!is_integer(v[j])) return false;
    return true;
  }
  const auto annihilator = integer_nullspace(to_rational(b.directions));
  if (annihilator.empty()) return true;
  IntMatrix p(annihilator.size(), nfree);
  for (std::size_t i = 0; i < annihilator.size(); ++i)
    for (std::size_t j = 0; j < nfree; ++j) p(i, j) = annihilator[i][j];
  // need an integer z with P z = P v
  std::vector<Rational> pv(p.rows(), Rational(0));
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < nfree; ++j) pv[i] += Rational(p(i, j)) * v[j];
  const auto dec = smith_decompose(p);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Rational y = 0;
    for (std::size_t l = 0; l < p.rows(); ++l) y += Rational(dec.left(i, l)) * pv[l];
    const Integer d = i < dec.form.diag.size() ? dec.form.diag[i] : Integer(0);
    if (d == 0) {
      if (y != 0) return false;
    } else if (!is_integer(y / Rational(d))) {
      return false;
    }
  }
  return true;
}

}  // namespace jumploci

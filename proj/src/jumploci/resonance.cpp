#include <algorithm>
#include <bit>
#include <stdexcept>

#include "algebra/linear.hpp"
#include "jumploci/jumploci.hpp"

namespace jumploci {

namespace {

bool is_zero_vector(const std::vector<Rational>& u) {
  return std::all_of(u.begin(), u.end(), [](const Rational& x) { return x == 0; });
}

// Row-reduced basis of the span, rows scaled to primitive integer vectors.
IntMatrix canonical_basis(const std::vector<std::vector<Rational>>& rows, std::size_t n) {
  RationalMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < n; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    const auto v = primitive_integer_vector(m.row(i));
    for (std::size_t j = 0; j < n; ++j) out(i, j) = v[j];
  }
  return out;
}

std::size_t stacked_rank(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix s(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, j) = b(i, j);
  return rank(s);
}

bool span_contains(const IntMatrix& big, const IntMatrix& small) {
  return stacked_rank(big, small) == big.rows();
}

std::vector<Rational> random_combination(const IntMatrix& basis, std::mt19937_64& rng) {
  std::vector<Rational> u(basis.cols(), Rational(0));
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    const Rational c = random_rational(rng);
    for (std::size_t j = 0; j < basis.cols(); ++j) u[j] += c * basis(i, j);
  }
  return u;
}

// ---- univariate helpers for the line search --------------------------------

using Univariate = std::vector<Rational>;  // coefficient of lambda^i at i

void trim(Univariate& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Univariate to_univariate(const LaurentPoly& p) {
  Univariate f;
  for (const auto& t : p.terms()) {
    if (t.exp[0] < 0) throw std::logic_error("negative power in a polynomial pencil");
    const auto e = static_cast<std::size_t>(t.exp[0]);
    if (f.size() <= e) f.resize(e + 1, Rational(0));
    f[e] = t.coeff;
  }
  trim(f);
  return f;
}

Univariate poly_mod(Univariate a, const Univariate& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    trim(a);
  }
  return a;
}

Univariate poly_gcd(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Univariate r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational horner(const Univariate& f, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

std::vector<Integer> divisors(Integer n, std::size_t cap) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  if (n == 0 || n > Integer("1000000000000")) return out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
    if (out.size() > cap) return {};
  }
  return out;
}

// Rational roots, via the rational root theorem on the primitive integer form.
std::vector<Rational> rational_roots(Univariate f) {
  trim(f);
  std::vector<Rational> roots;
  if (f.size() <= 1) return roots;
  std::size_t low = 0;
  while (f[low] == 0) ++low;
  if (low > 0) {
    roots.push_back(Rational(0));
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (f.size() == 2) {
    Rational r = -f[0] / f[1];
    roots.push_back(r);
    return roots;
  }
  if (f.size() < 2) return roots;
  const auto ints = primitive_integer_vector(f);
  const auto ps = divisors(ints.front(), 2000), qs = divisors(ints.back(), 2000);
  if (ps.empty() || qs.empty() || ps.size() * qs.size() > 200000) return roots;
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int sign : {1, -1}) {
        Rational x(p * sign, q);
        x.canonicalize();
        if (horner(f, x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  return roots;
}

// ---- component bookkeeping ------------------------------------------------

class ComponentSet {
 public:
  ComponentSet(const CupTensor& cup, std::size_t k, std::mt19937_64& rng) : cup_(cup), k_(k), rng_(rng) {}

  bool covers(const std::vector<Rational>& u) const {
    const IntMatrix v = canonical_basis({u}, cup_.b1());
    for (const auto& c : found_)
      if (span_contains(c.basis, v)) return true;
    return false;
  }

  bool covered(const IntMatrix& basis) const {
    for (const auto& c : found_)
      if (span_contains(c.basis, basis)) return true;
    return false;
  }

  // Certifies span(rows); returns true when it lies in R_k (new or already known).
  bool consider(const std::vector<std::vector<Rational>>& rows) {
    const IntMatrix basis = canonical_basis(rows, cup_.b1());
    if (basis.rows() == 0) return false;
    if (covered(basis)) return true;
    // a single point of rank above the bound refutes containment
    if (aomoto_h1(cup_, random_combination(basis, rng_)) < k_) return false;
    const std::size_t level = resonance_level(cup_, basis);
    if (level < k_) return false;
    std::erase_if(found_, [&](const LinearComponent& c) { return span_contains(basis, c.basis); });
    found_.push_back(LinearComponent{basis, level, true});
    return true;
  }

  std::vector<LinearComponent> take() {
    std::sort(found_.begin(), found_.end(), [](const LinearComponent& a, const LinearComponent& b) {
      if (a.dim() != b.dim()) return a.dim() > b.dim();
      return a.basis.data() < b.basis.data();
    });
    return std::move(found_);
  }

 private:
  const CupTensor& cup_;
  std::size_t k_;
  std::mt19937_64& rng_;
  std::vector<LinearComponent> found_;
};

std::vector<Rational> random_integer_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-100, 100);
  std::vector<Rational> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

std::size_t aomoto_h1(const CupTensor& cup, const std::vector<Rational>& u) {
  if (u.size() != cup.b1()) throw std::invalid_argument("cohomology class has the wrong length");
  if (is_zero_vector(u)) return cup.b1();
  return cup.b1() - 1 - rank(cup.left_multiplication(u));
}

bool resonance_member(const ResonanceLocus& r, const std::vector<Rational>& u) {
  return aomoto_h1(r.cup, u) >= r.k;
}

std::size_t resonance_level(const CupTensor& cup, const IntMatrix& basis) {
  const std::size_t d = basis.rows(), b1 = cup.b1(), h2 = cup.h2_dim();
  if (d == 0) throw std::invalid_argument("resonance level of the zero subspace");
  if (basis.cols() != b1) throw std::invalid_argument("basis vectors have the wrong length");
  // matrix of v -> (sum_i s_i basis_i) cup v over Q[s_1..s_d]
  LaurentMatrix m(h2, b1, LaurentPoly(d));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(b1);
    for (std::size_t j = 0; j < b1; ++j) row[j] = Rational(basis(i, j));
    const RationalMatrix mi = cup.left_multiplication(row);
    const LaurentPoly s = LaurentPoly::variable(d, i);
    for (std::size_t h = 0; h < h2; ++h)
      for (std::size_t j = 0; j < b1; ++j)
        if (mi(h, j) != 0) m(h, j) += s.scaled(mi(h, j));
  }
  const std::size_t r = generic_rank(m);
  return b1 >= r + 1 ? b1 - 1 - r : 0;
}

ResonanceResult resonance_components(const ResonanceLocus& locus, const SamplerConfig& config) {
  const CupTensor& cup = locus.cup;
  const std::size_t b1 = cup.b1(), h2 = cup.h2_dim(), k = locus.k;
  if (b1 > config.max_b1)
    throw std::invalid_argument("first Betti number " + std::to_string(b1) + " exceeds the configured bound " +
                                std::to_string(config.max_b1));
  if (k == 0) throw std::invalid_argument("jump level must be at least 1");
  ResonanceResult result;
  if (b1 < k + 1) return result;  // a nonzero class has Aomoto H^1 <= b1 - 1
  if (b1 > 24) throw std::invalid_argument("coordinate scan supports at most 24 classes");
  std::mt19937_64 rng(config.seed);
  ComponentSet set(cup, k, rng);

  auto unit_rows = [&](std::uint32_t mask) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < b1; ++i)
      if (mask >> i & 1) {
        rows.emplace_back(b1, Rational(0));
        rows.back()[i] = 1;
      }
    return rows;
  };

  // whole space, then coordinate subspaces largest first
  const std::uint32_t full = (1u << b1) - 1;
  if (!set.consider(unit_rows(full))) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 1; mask < full; ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
    for (auto mask : masks) {
      set.consider(unit_rows(mask));
    }
  } else {
    result.components = set.take();
    return result;
  }

  // random lines u0 + lambda w: the rank condition becomes univariate
  const std::size_t bound = b1 - 1 - k;  // allowed rank
  std::vector<std::vector<Rational>> stray;
  if (bound + 1 <= std::min(h2, b1)) {
    const std::size_t sz = bound + 1;
    std::uniform_int_distribution<int> small(-3, 3);
    for (std::size_t s = 0; s < config.samples; ++s) {
      const auto u0 = random_integer_vector(b1, rng), w = random_integer_vector(b1, rng);
      const RationalMatrix m0 = cup.left_multiplication(u0), m1 = cup.left_multiplication(w);
      Univariate g;
      for (int proj = 0; proj < 2; ++proj) {
        // random (sz x h2) . M . (b1 x sz): its determinant combines the sz-minors
        RationalMatrix p(sz, h2), q(b1, sz);
        for (std::size_t i = 0; i < sz; ++i)
          for (std::size_t h = 0; h < h2; ++h) p(i, h) = small(rng);
        for (std::size_t j = 0; j < b1; ++j)
          for (std::size_t i = 0; i < sz; ++i) q(j, i) = small(rng);
        LaurentMatrix pencil(sz, sz, LaurentPoly(1));
        for (std::size_t i = 0; i < sz; ++i)
          for (std::size_t l = 0; l < sz; ++l) {
            Rational c0 = 0, c1 = 0;
            for (std::size_t h = 0; h < h2; ++h) {
              if (p(i, h) == 0) continue;
              for (std::size_t j = 0; j < b1; ++j) {
                if (q(j, l) == 0) continue;
                c0 += p(i, h) * m0(h, j) * q(j, l);
                c1 += p(i, h) * m1(h, j) * q(j, l);
              }
            }
            pencil(i, l) = LaurentPoly::constant(1, c0) + LaurentPoly::variable(1, 0).scaled(c1);
          }
        const Univariate d = to_univariate(determinant(pencil));
        g = proj == 0 ? d : poly_gcd(g, d);
      }
      if (g.size() <= 1) continue;
      for (const auto& lambda : rational_roots(g)) {
        std::vector<Rational> u(b1);
        for (std::size_t j = 0; j < b1; ++j) u[j] = u0[j] + lambda * w[j];
        if (is_zero_vector(u) || aomoto_h1(cup, u) < k || set.covers(u)) continue;
        // try the kernel of u cup -, then spans with earlier stray points
        const auto kernel = nullspace(cup.left_multiplication(u));
        if (set.consider(kernel)) continue;
        bool placed = false;
        for (const auto& v : stray)
          if (set.consider({u, v})) {
            placed = true;
            break;
          }
        if (!placed) stray.push_back(u);
      }
    }
  }
  for (const auto& u : stray)
    if (!set.covers(u)) result.uncertified.push_back(u);
  result.components = set.take();
  return result;
}

}  // namespace jumploci

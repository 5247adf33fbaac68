#include <numeric>
#include <random>

#include "doctest.h"

#include "algebra/character.hpp"
#include "algebra/laurent.hpp"
#include "algebra/linear.hpp"
#include "algebra/prime_field.hpp"
#include "algebra/smith.hpp"

using namespace jumploci;

namespace {

LaurentPoly poly(std::size_t nv, std::vector<std::pair<Exponent, long>> terms) {
  std::vector<Term> t;
  for (auto& [e, c] : terms) t.push_back(Term{e, Rational(c)});
  return LaurentPoly::from_terms(nv, std::move(t));
}

IntMatrix imat(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Integer>> r;
  for (auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().push_back(Integer(v));
  }
  return IntMatrix::from_rows(r);
}

std::vector<long> diag_of(const SmithForm& f) {
  std::vector<long> out;
  for (const auto& d : f.diag) out.push_back(d.get_si());
  return out;
}

// gcd of all k x k minors, by cofactor expansion; independent of elimination
Integer det_cofactor(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    Integer term = m(0, j) * det_cofactor(sub);
    d += (j % 2 == 0) ? term : Integer(-term);
  }
  return d;
}

Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  std::vector<bool> rmask(m.rows(), false), cmask;
  std::fill(rmask.begin(), rmask.begin() + static_cast<long>(k), true);
  do {
    cmask.assign(m.cols(), false);
    std::fill(cmask.begin(), cmask.begin() + static_cast<long>(k), true);
    do {
      IntMatrix sub(k, k);
      std::size_t r = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!rmask[i]) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (cmask[j]) sub(r, c++) = m(i, j);
        ++r;
      }
      Integer d = det_cofactor(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::prev_permutation(cmask.begin(), cmask.end()));
  } while (std::prev_permutation(rmask.begin(), rmask.end()));
  return g;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix u = identity_matrix(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-3, 3);
  for (int step = 0; step < 6; ++step) {
    const auto a = static_cast<std::size_t>(pick(rng)), b = static_cast<std::size_t>(pick(rng));
    if (a == b) {
      for (std::size_t c = 0; c < n; ++c) u(a, c) = -u(a, c);
      continue;
    }
    const int q = coef(rng);
    for (std::size_t c = 0; c < n; ++c) u(a, c) += q * u(b, c);
  }
  return u;
}

// plain Gaussian elimination over Q, used as the rank oracle
std::size_t rank_gauss(RationalMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_SUITE("smith") {
  TEST_CASE("worked examples") {
    CHECK(diag_of(smith_normal_form(imat({{2, 0}, {0, 3}}))) == std::vector<long>{1, 6});
    const auto z = smith_normal_form(imat({{0}}));
    CHECK(diag_of(z) == std::vector<long>{0});
    CHECK(z.rank == 0);
    CHECK(z.torsion.empty());
    const auto f = smith_normal_form(imat({{2, 4}, {6, 8}}));
    CHECK(diag_of(f) == std::vector<long>{2, 4});
    CHECK(f.rank == 2);
    CHECK(smith_normal_form(IntMatrix()).diag.empty());
  }

  TEST_CASE("decomposition reproduces the diagonal") {
    const IntMatrix a = imat({{3, 0, 6, -2}, {1, 4, 0, 5}, {2, -4, 6, -7}});
    const auto dec = smith_decompose(a);
    const IntMatrix d = dec.left * a * dec.right;
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        CHECK(d(i, j) == (i == j ? dec.form.diag[i] : Integer(0)));
    CHECK(dec.right_inverse * dec.right == identity_matrix(4));
  }

  TEST_CASE("diagonal matches determinantal divisors on random 3x3 matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
      IntMatrix a(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = entry(rng);
      const auto f = smith_normal_form(a);
      Integer prod = 1;
      for (std::size_t k = 1; k <= 3; ++k) {
        prod *= f.diag[k - 1];
        CHECK(prod == determinantal_divisor(a, k));
      }
      for (std::size_t k = 0; k + 1 < 3; ++k)
        if (f.diag[k] != 0) CHECK(mpz_divisible_p(f.diag[k + 1].get_mpz_t(), f.diag[k].get_mpz_t()));
    }
  }

  TEST_CASE("invariant under unimodular transforms") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
      IntMatrix a(3, 4);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = entry(rng);
      const auto base = smith_normal_form(a).diag;
      const IntMatrix b = random_unimodular(3, rng) * a * random_unimodular(4, rng);
      CHECK(smith_normal_form(b).diag == base);
    }
  }
}

TEST_SUITE("laurent") {
  TEST_CASE("multiplication") {
    const auto t = LaurentPoly::variable(1, 0);
    const auto one = LaurentPoly::constant(1, 1);
    CHECK((t - one) * (t + one) == poly(1, {{{2}, 1}, {{0}, -1}}));
    CHECK(laurent_mul(t - one, LaurentPoly(1)).is_zero());
    // (1 - t_b)(t_b - 1) in Q[t_a, t_b]
    const auto tb = LaurentPoly::variable(2, 1);
    const auto c1 = LaurentPoly::constant(2, 1);
    CHECK((c1 - tb) * (tb - c1) == poly(2, {{{0, 2}, -1}, {{0, 1}, 2}, {{0, 0}, -1}}));
    CHECK_THROWS_AS(laurent_mul(t, tb), std::invalid_argument);
  }

  TEST_CASE("substitution") {
    // t_a - 1 with t_a -> s^2
    const auto f = LaurentPoly::variable(1, 0) - LaurentPoly::constant(1, 1);
    std::vector<Exponent> im{{2}};
    CHECK(laurent_substitute(f, im, 1) == poly(1, {{{2}, 1}, {{0}, -1}}));
    // 1 - t_b with t_b -> 1 (the empty monomial)
    std::vector<Exponent> to_one{{0}};
    CHECK(laurent_substitute(LaurentPoly::constant(1, 1) - LaurentPoly::variable(1, 0), to_one, 1).is_zero());
    // t_a t_b - 1 with t_a -> s, t_b -> s^-1
    const auto g = poly(2, {{{1, 1}, 1}, {{0, 0}, -1}});
    std::vector<Exponent> kill{{1}, {-1}};
    CHECK(laurent_substitute(g, kill, 1).is_zero());
  }

  TEST_CASE("substitution over F_p with root-of-unity scales") {
    const PrimeField f(prime_for_root_order(2));
    // t^2 - 1 at t -> (-1) * s  is  s^2 - 1, not zero; t + 1 at t -> -1 vanishes
    const auto t = LaurentPoly::variable(1, 0);
    const auto one = LaurentPoly::constant(1, 1);
    std::vector<Exponent> to_const{{0}};
    std::vector<std::uint64_t> minus_one{f.modulus() - 1};
    CHECK(laurent_substitute_mod_p(t + one, to_const, minus_one, f, 1).is_zero());
    std::vector<Exponent> to_s{{1}};
    CHECK_FALSE(laurent_substitute_mod_p(t * t - one, to_s, minus_one, f, 1).is_zero());
  }

  TEST_CASE("evaluation") {
    const auto t = LaurentPoly::variable(1, 0);
    const auto one = LaurentPoly::constant(1, 1);
    std::vector<Rational> two{Rational(2)};
    CHECK(laurent_evaluate(one - t, two) == -1);
    CHECK(laurent_evaluate(t * t - LaurentPoly::variable(1, 0, -1), two) == Rational(7, 2));
    const auto ta = LaurentPoly::variable(2, 0), tb = LaurentPoly::variable(2, 1);
    const auto c = LaurentPoly::constant(2, 1);
    std::vector<Rational> pt{Rational(1), Rational(5)};
    CHECK(laurent_evaluate((ta - c) * (tb - c), pt) == 0);
  }

  TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> e(-2, 2), c(-4, 4), nterms(0, 4);
    auto random_poly = [&] {
      std::vector<Term> t;
      const int k = nterms(rng);
      for (int i = 0; i < k; ++i) t.push_back(Term{Exponent{e(rng), e(rng), e(rng)}, Rational(c(rng))});
      return LaurentPoly::from_terms(3, std::move(t));
    };
    const PrimeField field(1000003);
    std::uniform_int_distribution<std::uint64_t> unit(1, field.modulus() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const auto f = random_poly(), g = random_poly();
      std::vector<Rational> pt;
      for (int i = 0; i < 3; ++i) {
        Rational q(c(rng) == 0 ? 3 : c(rng) + 9, 7);
        q.canonicalize();
        pt.push_back(q);
      }
      CHECK(laurent_evaluate(f * g, pt) == laurent_evaluate(f, pt) * laurent_evaluate(g, pt));
      CHECK(laurent_evaluate(f + g, pt) == laurent_evaluate(f, pt) + laurent_evaluate(g, pt));
      std::vector<std::uint64_t> mp{unit(rng), unit(rng), unit(rng)};
      CHECK(laurent_evaluate(f * g, mp, field) ==
            field.mul(laurent_evaluate(f, mp, field), laurent_evaluate(g, mp, field)));
    }
  }

  TEST_CASE("exact division") {
    const auto t = LaurentPoly::variable(2, 0), s = LaurentPoly::variable(2, 1);
    const auto one = LaurentPoly::constant(2, 1);
    const auto a = (t - one) * (s + one) * LaurentPoly::variable(2, 1, -2);
    auto q = exact_divide(a, s + one);
    REQUIRE(q);
    CHECK(*q == (t - one) * LaurentPoly::variable(2, 1, -2));
    CHECK_FALSE(exact_divide(t * t + one, t + one));
    CHECK_FALSE(exact_divide(t, LaurentPoly(2)));
  }

  TEST_CASE("normalization") {
    const auto tb = LaurentPoly::variable(1, 0);
    const auto one = LaurentPoly::constant(1, 1);
    CHECK((one - tb).normalized() == tb - one);
    CHECK(((one - tb) * (tb - one)).normalized() == (tb - one) * (tb - one));
    CHECK((tb.scaled(Rational(-6)) * tb + tb.scaled(Rational(4))).normalized() == tb.scaled(Rational(3)) - one.scaled(Rational(2)));
  }
}

TEST_SUITE("linear") {
  TEST_CASE("rank at a character") {
    const auto ta = LaurentPoly::variable(2, 0), tb = LaurentPoly::variable(2, 1);
    const auto one = LaurentPoly::constant(2, 1);
    LaurentMatrix m = LaurentMatrix::from_rows({{one - tb, ta - one}});
    CHECK(matrix_rank_at(m, CharacterPoint::rational({Rational(2), Rational(3)})) == 1);
    LaurentMatrix zero(2, 3, LaurentPoly(2));
    CHECK(matrix_rank_at(zero, CharacterPoint::rational({Rational(2), Rational(3)})) == 0);
    LaurentMatrix id(3, 3, LaurentPoly(2));
    for (std::size_t i = 0; i < 3; ++i) id(i, i) = one;
    CHECK(matrix_rank_at(id, CharacterPoint::rational({Rational(5), Rational(-1, 3)})) == 3);
    CHECK(matrix_rank_at(id, CharacterPoint::mod_p(1000003, 1, {17, 5})) == 3);
    CHECK_THROWS_AS(matrix_rank_at(id, CharacterPoint::rational({Rational(2)})), std::invalid_argument);
  }

  TEST_CASE("rank agrees with Gaussian elimination on random integer matrices") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> entry(-5, 5), dim(1, 5), ex(-1, 1);
    for (int trial = 0; trial < 150; ++trial) {
      const auto r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
      LaurentMatrix m(r, c, LaurentPoly(2));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          // sparse-ish entries so ranks vary
          if (entry(rng) > 1) continue;
          m(i, j) = LaurentPoly::monomial(2, {ex(rng), ex(rng)}, Rational(entry(rng)));
        }
      const std::vector<Rational> pt{Rational(3, 2), Rational(-5, 7)};
      RationalMatrix ev(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) ev(i, j) = laurent_evaluate(m(i, j), pt);
      CHECK(matrix_rank_at(m, CharacterPoint::rational(pt)) == rank_gauss(ev));
    }
  }

  TEST_CASE("rank over F_p is bounded by and almost always equals rank over Q") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> entry(-5, 5), dim(1, 5);
    const std::uint64_t p = 1000003;
    const PrimeField f(p);
    int equal = 0, total = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
      LaurentMatrix m(r, c, LaurentPoly(1));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          m(i, j) = LaurentPoly::variable(1, 0).scaled(Rational(entry(rng))) + LaurentPoly::constant(1, entry(rng));
      const int a = 1 + (trial % 50);
      const auto rq = matrix_rank_at(m, CharacterPoint::rational({Rational(a)}));
      const auto rp = matrix_rank_at(m, CharacterPoint::mod_p(p, 1, {f.from_int(a)}));
      CHECK(rp <= rq);
      equal += rp == rq;
      ++total;
    }
    CHECK(equal * 100 >= total * 99);
  }

  TEST_CASE("minors") {
    const auto ta = LaurentPoly::variable(3, 0), tb = LaurentPoly::variable(3, 1), tc = LaurentPoly::variable(3, 2);
    const auto one = LaurentPoly::constant(3, 1), zero = LaurentPoly(3);
    LaurentMatrix m = LaurentMatrix::from_rows({{one - tb, ta - one, zero}, {zero, one - tc, tb - one}});
    const auto got = minors(m, 2);
    std::vector<LaurentPoly> want{((one - tb) * (one - tc)).normalized(), ((one - tb) * (tb - one)).normalized(),
                                  ((ta - one) * (tb - one)).normalized()};
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    LaurentMatrix z(1, 1, LaurentPoly(1));
    CHECK(minors(z, 1).empty());

    LaurentMatrix row = LaurentMatrix::from_rows({{one - tb, ta - one}});
    std::vector<LaurentPoly> want1{tb - one, ta - one};
    std::sort(want1.begin(), want1.end());
    CHECK(minors(row, 1) == want1);
    CHECK_THROWS_AS(minors(row, 2), std::out_of_range);
    CHECK_THROWS_AS(minors(row, 0), std::out_of_range);
  }

  TEST_CASE("determinant and generic rank") {
    const auto s = LaurentPoly::variable(2, 0), u = LaurentPoly::variable(2, 1);
    const auto zero = LaurentPoly(2);
    // antisymmetric 3x3 linear matrix has generic rank 2 and determinant 0
    LaurentMatrix skew = LaurentMatrix::from_rows({{zero, s, u}, {-s, zero, s + u}, {-u, -(s + u), zero}});
    CHECK(determinant(skew).is_zero());
    CHECK(generic_rank(skew) == 2);
    LaurentMatrix m = LaurentMatrix::from_rows({{s, u, zero}, {zero, s, u}, {u, zero, s}});
    CHECK(determinant(m) == s * s * s + u * u * u);
  }

  TEST_CASE("nullspace") {
    RationalMatrix a = RationalMatrix::from_rows({{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)}});
    const auto ns = integer_nullspace(a);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
  }
}

TEST_SUITE("prime field") {
  TEST_CASE("root-of-unity primes") {
    for (std::uint64_t n : {2, 3, 4, 5, 12, 30}) {
      const auto p = prime_for_root_order(n);
      CHECK(p > 1000000);
      CHECK(p % n == 1 % n);
      CHECK(is_prime(p));
      for (std::uint64_t q = 1000001; q < p; ++q) CHECK_FALSE((is_prime(q) && q % n == 1 % n));
      const PrimeField f(p);
      const auto z = f.root_of_unity(n);
      CHECK(f.pow(z, static_cast<std::int64_t>(n)) == 1);
      for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0) CHECK(f.pow(z, static_cast<std::int64_t>(d)) != 1);
    }
  }
}

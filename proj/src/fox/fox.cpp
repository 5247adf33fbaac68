#include "fox/fox.hpp"

#include <set>
#include <stdexcept>

#include "algebra/linear.hpp"

namespace jumploci {

GroupRingElement GroupRingElement::of(const Word& w, const Rational& c) {
  GroupRingElement e;
  e.add(w, c);
  return e;
}

void GroupRingElement::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out;
  for (const auto& [u, c] : a.terms_)
    for (const auto& [v, d] : b.terms_) out.add(u * v, c * d);
  return out;
}

GroupRingElement fox_derivative(const Word& w, std::size_t i, std::size_t ngens) {
  if (i >= ngens) throw std::out_of_range("Fox derivative generator index out of range");
  GroupRingElement out;
  Word prefix;
  const Word x = Word::generator(i);
  for (const auto& l : w.letters()) {
    if (l.gen == i) {
      if (l.exp > 0) out += GroupRingElement::of(prefix);
      else out -= GroupRingElement::of(prefix * x.inverse());
    }
    prefix = prefix * Word::generator(l.gen, l.exp);
  }
  return out;
}

Exponent abelianize_word(const Word& w, const AbelianizationData& abel) {
  const std::size_t nfree = abel.b1, ntors = abel.torsion.size();
  std::vector<Integer> acc(nfree + ntors, Integer(0));
  for (const auto& s : w.syllables()) {
    for (std::size_t k = 0; k < nfree; ++k) acc[k] += abel.basis_map(s.gen, k) * s.exp;
    for (std::size_t k = 0; k < ntors; ++k) acc[nfree + k] += abel.torsion_map(s.gen, k) * s.exp;
  }
  Exponent e(nfree + ntors);
  for (std::size_t k = 0; k < nfree + ntors; ++k) {
    if (k >= nfree) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), acc[k].get_mpz_t(), abel.torsion[k - nfree].get_mpz_t());
      acc[k] = r;
    }
    if (!acc[k].fits_sint_p()) throw std::overflow_error("exponent exceeds machine range");
    e[k] = static_cast<std::int32_t>(acc[k].get_si());
  }
  return e;
}

LaurentPoly abelianize(const GroupRingElement& x, const AbelianizationData& abel) {
  const std::size_t nv = abel.b1 + abel.torsion.size();
  std::vector<Term> terms;
  for (const auto& [w, c] : x.terms()) terms.push_back(Term{abelianize_word(w, abel), c});
  return LaurentPoly::from_terms(nv, std::move(terms));
}

AlexanderMatrix alexander_matrix(const Presentation& p) {
  AlexanderMatrix a;
  a.abel = abelianization(p);
  a.num_generators = p.num_generators();
  for (const auto& d : a.abel.torsion) a.torsion_orders.push_back(d.get_ui());
  const std::size_t nv = a.nvars();
  std::set<std::string> used;
  for (std::size_t k = 0; k < a.abel.b1; ++k) {
    std::string name = "t" + std::to_string(k + 1);
    // a basis vector that is literally one generator gets that generator's name
    std::size_t hits = 0, which = 0;
    for (std::size_t i = 0; i < p.num_generators(); ++i)
      if (a.abel.coordinate_words(k, i) != 0) ++hits, which = i;
    if (hits == 1 && a.abel.coordinate_words(k, which) == 1 && a.abel.basis_map(which, k) == 1)
      name = "t_" + p.generators()[which];
    while (!used.insert(name).second) name += "'";
    a.var_names.push_back(name);
  }
  for (std::size_t k = 0; k < a.torsion_orders.size(); ++k) {
    std::string name = "s" + std::to_string(k + 1);
    while (!used.insert(name).second) name += "'";
    a.var_names.push_back(name);
  }
  a.entries = LaurentMatrix(p.num_relators(), p.num_generators(), LaurentPoly(nv));
  for (std::size_t r = 0; r < p.num_relators(); ++r)
    for (std::size_t i = 0; i < p.num_generators(); ++i)
      a.entries(r, i) = abelianize(fox_derivative(p.relators()[r], i, p.num_generators()), a.abel);
  return a;
}

void check_character(const AlexanderMatrix& a, const CharacterPoint& rho) {
  if (rho.size() != a.nvars()) throw std::invalid_argument("character has the wrong number of coordinates");
  const std::size_t nfree = a.num_free_vars();
  for (std::size_t k = 0; k < a.torsion_orders.size(); ++k) {
    const auto order = static_cast<std::int64_t>(a.torsion_orders[k]);
    bool ok;
    if (rho.is_rational()) ok = rational_pow(rho.rational_coords()[nfree + k], order) == 1;
    else ok = rho.field().pow(rho.mod_p_coords()[nfree + k], order) == 1;
    if (!ok) throw std::invalid_argument("torsion coordinate is not a root of unity of the factor's order");
  }
}

std::size_t h1_dim_at(const Presentation& p, const AlexanderMatrix& a, const CharacterPoint& rho) {
  check_character(a, rho);
  if (rho.is_trivial()) return a.abel.b1;
  if (p.num_relators() == 0) return p.num_generators() - 1;
  return p.num_generators() - 1 - matrix_rank_at(a.entries, rho);
}

CharacterPoint character_from_generator_images(const AlexanderMatrix& a, const std::vector<Rational>& images) {
  if (images.size() != a.num_generators) throw std::invalid_argument("one image per generator required");
  std::vector<Rational> coords;
  for (std::size_t k = 0; k < a.nvars(); ++k) {
    Rational v = 1;
    for (std::size_t i = 0; i < a.num_generators; ++i)
      v *= rational_pow(images[i], a.abel.coordinate_words(k, i).get_si());
    coords.push_back(v);
  }
  auto rho = CharacterPoint::rational(std::move(coords));
  check_character(a, rho);
  return rho;
}

CharacterPoint character_from_generator_images(const AlexanderMatrix& a, std::uint64_t prime,
                                               std::uint64_t root_order,
                                               const std::vector<std::uint64_t>& images) {
  if (images.size() != a.num_generators) throw std::invalid_argument("one image per generator required");
  const PrimeField f(prime);
  std::vector<std::uint64_t> coords;
  for (std::size_t k = 0; k < a.nvars(); ++k) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < a.num_generators; ++i)
      v = f.mul(v, f.pow(images[i], a.abel.coordinate_words(k, i).get_si()));
    coords.push_back(v);
  }
  auto rho = CharacterPoint::mod_p(prime, root_order, std::move(coords));
  check_character(a, rho);
  return rho;
}

Rational random_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound - 1), den(1, bound);
  int n = num(rng);
  if (n >= 0) ++n;  // skip zero
  Rational q(n, den(rng));
  q.canonicalize();
  return q;
}

CharacterPoint random_rational_character(const AlexanderMatrix& a, std::mt19937_64& rng, int bound) {
  for (;;) {
    std::vector<Rational> coords(a.nvars(), Rational(1));
    for (std::size_t k = 0; k < a.num_free_vars(); ++k) coords[k] = random_rational(rng, bound);
    auto rho = CharacterPoint::rational(std::move(coords));
    if (!rho.is_trivial() || a.num_free_vars() == 0) return rho;
  }
}

}  // namespace jumploci

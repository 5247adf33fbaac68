#include "algebra/laurent.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace jumploci {

namespace {

using TermMap = std::map<Exponent, Rational, std::greater<Exponent>>;

std::vector<Term> flatten(TermMap&& m) {
  std::vector<Term> out;
  out.reserve(m.size());
  for (auto& [e, c] : m)
    if (c != 0) out.push_back(Term{e, c});
  return out;
}

void require_same(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("Laurent polynomials over different rings");
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent sub_exp(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// merges two descending term lists; sign = +1 or -1 applied to b
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp > b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp > a[i].exp) {
      out.push_back(Term{b[j].exp, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back(Term{a[i].exp, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c) {
  return monomial(nvars, Exponent(nvars, 0), c);
}

LaurentPoly LaurentPoly::monomial(std::size_t nvars, Exponent exp, const Rational& c) {
  if (exp.size() != nvars) throw std::invalid_argument("exponent length does not match nvars");
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.push_back(Term{std::move(exp), c});
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t index, std::int32_t power) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = power;
  return monomial(nvars, std::move(e));
}

LaurentPoly LaurentPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  TermMap m;
  for (auto& t : terms) {
    if (t.exp.size() != nvars) throw std::invalid_argument("exponent length does not match nvars");
    m[std::move(t.exp)] += t.coeff;
  }
  LaurentPoly p(nvars);
  p.terms_ = flatten(std::move(m));
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](std::int32_t e) { return e == 0; });
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p(*this);
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& g) {
  require_same(*this, g);
  terms_ = merge(terms_, g.terms_, +1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& g) {
  require_same(*this, g);
  terms_ = merge(terms_, g.terms_, -1);
  return *this;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return LaurentPoly(nvars_);
  LaurentPoly p(*this);
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

LaurentPoly LaurentPoly::shifted(const Exponent& by) const {
  if (by.size() != nvars_) throw std::invalid_argument("shift length does not match nvars");
  LaurentPoly p(*this);
  for (auto& t : p.terms_) t.exp = add_exp(t.exp, by);
  return p;
}

LaurentPoly LaurentPoly::normalized() const {
  if (terms_.empty()) return *this;
  Exponent lo = terms_.front().exp;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) lo[i] = std::min(lo[i], t.exp[i]);
  for (auto& e : lo) e = -e;
  LaurentPoly p = shifted(lo);
  // content: gcd of numerators over lcm of denominators
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.terms_.front().coeff < 0) scale = -scale;
  return p.scaled(scale);
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    const bool is_one = std::all_of(t.exp.begin(), t.exp.end(), [](std::int32_t e) { return e == 0; });
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    first = false;
    if (c != 1 || is_one) {
      os << c.get_str();
      if (!is_one) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (t.exp[i] != 1) os << "^" << t.exp[i];
    }
  }
  return os.str();
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.nvars());
  TermMap m;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) m[add_exp(s.exp, t.exp)] += s.coeff * t.coeff;
  LaurentPoly p(a.nvars());
  p.terms_ = flatten(std::move(m));
  return p;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = a.terms_[i];
    const auto& t = b.terms_[i];
    if (s.exp != t.exp) return s.exp > t.exp;
    if (s.coeff != t.coeff) return s.coeff < t.coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

std::optional<LaurentPoly> exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
  require_same(f, g);
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) return LaurentPoly(f.nvars());
  // Leading terms multiply under a group order on Z^n, so every step peels off
  // the next quotient term. An exact quotient's exponents lie in the box
  // [min f - min g, max f - max g] per variable; leaving it means no quotient,
  // and the box being finite bounds the loop.
  const std::size_t n = f.nvars();
  Exponent lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int32_t fmin = f.terms()[0].exp[i], fmax = fmin, gmin = g.terms()[0].exp[i], gmax = gmin;
    for (const auto& t : f.terms()) fmin = std::min(fmin, t.exp[i]), fmax = std::max(fmax, t.exp[i]);
    for (const auto& t : g.terms()) gmin = std::min(gmin, t.exp[i]), gmax = std::max(gmax, t.exp[i]);
    lo[i] = fmin - gmin;
    hi[i] = fmax - gmax;
    if (lo[i] > hi[i]) return std::nullopt;
  }
  std::vector<Term> quotient;
  LaurentPoly rem = f;
  const Term& lead = g.leading_term();
  while (!rem.is_zero()) {
    const Term& r = rem.leading_term();
    Term q{sub_exp(r.exp, lead.exp), r.coeff / lead.coeff};
    for (std::size_t i = 0; i < n; ++i)
      if (q.exp[i] < lo[i] || q.exp[i] > hi[i]) return std::nullopt;
    if (!quotient.empty() && !(q.exp < quotient.back().exp)) return std::nullopt;
    rem -= g.shifted(q.exp).scaled(q.coeff);
    quotient.push_back(std::move(q));
  }
  return LaurentPoly::from_terms(f.nvars(), std::move(quotient));
}

LaurentPoly laurent_substitute(const LaurentPoly& f, std::span<const Exponent> images,
                               std::size_t target_nvars) {
  if (images.size() != f.nvars()) throw std::invalid_argument("one image per variable required");
  for (const auto& im : images)
    if (im.size() != target_nvars) throw std::invalid_argument("image exponent length mismatch");
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Exponent e(target_nvars, 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      for (std::size_t j = 0; j < target_nvars; ++j) e[j] += t.exp[i] * images[i][j];
    }
    out.push_back(Term{std::move(e), t.coeff});
  }
  return LaurentPoly::from_terms(target_nvars, std::move(out));
}

ModPLaurent laurent_substitute_mod_p(const LaurentPoly& f, std::span<const Exponent> images,
                                     std::span<const std::uint64_t> scales,
                                     const PrimeField& field, std::size_t target_nvars) {
  if (images.size() != f.nvars() || scales.size() != f.nvars())
    throw std::invalid_argument("one image per variable required");
  ModPLaurent out;
  out.nvars = target_nvars;
  for (const auto& t : f.terms()) {
    Exponent e(target_nvars, 0);
    std::uint64_t c = field.from_rational(t.coeff);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      c = field.mul(c, field.pow(scales[i], t.exp[i]));
      for (std::size_t j = 0; j < target_nvars; ++j) e[j] += t.exp[i] * images[i][j];
    }
    auto [it, inserted] = out.terms.try_emplace(std::move(e), 0);
    it->second = field.add(it->second, c);
    if (it->second == 0) out.terms.erase(it);
  }
  return out;
}

Rational rational_pow(const Rational& base, std::int64_t exp) {
  if (exp == 0) return 1;
  if (base == 0) throw std::domain_error("zero raised to a power in a Laurent evaluation");
  const auto e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exp > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Rational laurent_evaluate(const LaurentPoly& f, std::span<const Rational> point) {
  if (point.size() != f.nvars()) throw std::invalid_argument("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i] != 0) v *= rational_pow(point[i], t.exp[i]);
    sum += v;
  }
  return sum;
}

std::uint64_t laurent_evaluate(const LaurentPoly& f, std::span<const std::uint64_t> point,
                               const PrimeField& field) {
  if (point.size() != f.nvars()) throw std::invalid_argument("evaluation point has wrong length");
  std::uint64_t sum = 0;
  for (const auto& t : f.terms()) {
    std::uint64_t v = field.from_rational(t.coeff);
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i] != 0) v = field.mul(v, field.pow(point[i], t.exp[i]));
    sum = field.add(sum, v);
  }
  return sum;
}

}  // namespace jumploci

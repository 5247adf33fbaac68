#include "algebra/prime_field.hpp"

#include <stdexcept>
#include <vector>

namespace jumploci {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t prime_for_root_order(std::uint64_t order, std::uint64_t lower) {
  if (order == 0) throw std::invalid_argument("root order must be positive");
  std::uint64_t p = lower + 1;
  // first candidate with p == 1 mod order
  const std::uint64_t r = p % order;
  if (r != 1 % order) p += (order + 1 - r) % order;
  while (!is_prime(p)) p += order;
  return p;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (std::uint64_t{1} << 62) || !is_prime(p))
    throw std::invalid_argument("PrimeField needs a word-sized prime");
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const {
  const std::uint64_t s = a + b;
  return s >= p_ ? s - p_ : s;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const {
  return a >= b ? a - b : a + p_ - b;
}

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::int64_t exp) const {
  if (exp < 0) {
    base = inv(base);
    exp = -exp;
  }
  std::uint64_t result = 1 % p_;
  auto e = static_cast<std::uint64_t>(exp);
  while (e) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, static_cast<std::int64_t>(p_ - 2));
}

std::uint64_t PrimeField::from_integer(const Integer& z) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
  return r.get_ui();
}

std::uint64_t PrimeField::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::from_rational(const Rational& q) const {
  const std::uint64_t den = from_integer(q.get_den());
  if (den == 0) throw std::domain_error("rational denominator vanishes mod p");
  return mul(from_integer(q.get_num()), inv(den));
}

std::uint64_t PrimeField::root_of_unity(std::uint64_t order) const {
  if (order == 0 || (p_ - 1) % order != 0)
    throw std::domain_error("root of unity order does not divide p - 1");
  if (order == 1) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p_ - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < p_; ++g) {
    bool generator = true;
    for (std::uint64_t f : factors)
      if (pow(g, static_cast<std::int64_t>((p_ - 1) / f)) == 1) {
        generator = false;
        break;
      }
    if (generator) return pow(g, static_cast<std::int64_t>((p_ - 1) / order));
  }
  throw std::logic_error("no primitive root found");
}

}  // namespace jumploci

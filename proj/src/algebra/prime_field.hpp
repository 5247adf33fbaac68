#pragma once

#include <cstdint>

#include "algebra/matrix.hpp"

namespace jumploci {

// Arithmetic in F_p for word-sized primes (p < 2^62).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  // negative exponents invert first
  std::uint64_t pow(std::uint64_t base, std::int64_t exp) const;

  std::uint64_t from_integer(const Integer& z) const;
  std::uint64_t from_int(std::int64_t v) const;
  // throws std::domain_error if the denominator vanishes mod p
  std::uint64_t from_rational(const Rational& q) const;

  // A fixed primitive N-th root of unity; requires N | p - 1.
  std::uint64_t root_of_unity(std::uint64_t order) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

// Smallest prime p > lower with p == 1 (mod order).
std::uint64_t prime_for_root_order(std::uint64_t order, std::uint64_t lower = 1000000);

}  // namespace jumploci

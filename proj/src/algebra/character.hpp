#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "algebra/matrix.hpp"
#include "algebra/prime_field.hpp"

namespace jumploci {

// A point of the character torus: exact nonzero coordinates, either over Q
// or over F_p. Over F_p the field carries a declared root-of-unity order N
// (p == 1 mod N) so torsion coordinates can be realized exactly.
class CharacterPoint {
 public:
  static CharacterPoint rational(std::vector<Rational> coords);
  static CharacterPoint mod_p(std::uint64_t prime, std::uint64_t root_order,
                              std::vector<std::uint64_t> coords);

  bool is_rational() const { return std::holds_alternative<std::vector<Rational>>(coords_); }
  std::size_t size() const;
  bool is_trivial() const;

  const std::vector<Rational>& rational_coords() const;
  const std::vector<std::uint64_t>& mod_p_coords() const;
  std::uint64_t prime() const { return prime_; }
  std::uint64_t root_order() const { return root_order_; }
  PrimeField field() const { return PrimeField(prime_); }

  friend bool operator==(const CharacterPoint&, const CharacterPoint&) = default;

 private:
  CharacterPoint() = default;
  std::variant<std::vector<Rational>, std::vector<std::uint64_t>> coords_;
  std::uint64_t prime_ = 0;
  std::uint64_t root_order_ = 1;
};

}  // namespace jumploci

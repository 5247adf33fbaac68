#include "algebra/character.hpp"

#include <algorithm>
#include <stdexcept>

namespace jumploci {

CharacterPoint CharacterPoint::rational(std::vector<Rational> coords) {
  for (auto& c : coords) {
    c.canonicalize();
    if (c == 0) throw std::invalid_argument("character coordinates must be nonzero");
  }
  CharacterPoint p;
  p.coords_ = std::move(coords);
  return p;
}

CharacterPoint CharacterPoint::mod_p(std::uint64_t prime, std::uint64_t root_order,
                                     std::vector<std::uint64_t> coords) {
  PrimeField f(prime);
  if (root_order == 0 || (prime - 1) % root_order != 0)
    throw std::invalid_argument("prime must be 1 mod the root-of-unity order");
  for (auto c : coords)
    if (c == 0 || c >= prime) throw std::invalid_argument("character coordinates must be units mod p");
  CharacterPoint p;
  p.coords_ = std::move(coords);
  p.prime_ = prime;
  p.root_order_ = root_order;
  return p;
}

std::size_t CharacterPoint::size() const {
  return std::visit([](const auto& v) { return v.size(); }, coords_);
}

bool CharacterPoint::is_trivial() const {
  if (is_rational()) {
    const auto& v = rational_coords();
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 1; });
  }
  const auto& v = mod_p_coords();
  return std::all_of(v.begin(), v.end(), [](std::uint64_t c) { return c == 1; });
}

const std::vector<Rational>& CharacterPoint::rational_coords() const {
  if (!is_rational()) throw std::logic_error("character is not rational");
  return std::get<std::vector<Rational>>(coords_);
}

const std::vector<std::uint64_t>& CharacterPoint::mod_p_coords() const {
  if (is_rational()) throw std::logic_error("character is not over F_p");
  return std::get<std::vector<std::uint64_t>>(coords_);
}

}  // namespace jumploci

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace jumploci {

struct Syllable {
  std::size_t gen;
  std::int64_t exp;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Freely reduced word in a free group: no zero exponents and no two
// adjacent syllables on the same generator.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables);

  static Word generator(std::size_t gen, std::int64_t exp = 1);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  std::size_t length() const;  // number of letters

  Word inverse() const;
  Word power(std::int64_t n) const;
  Word cyclically_reduced() const;
  std::vector<std::int64_t> exponent_sums(std::size_t ngens) const;
  // Letter expansion: (generator, +1 | -1) per letter.
  std::vector<Syllable> letters() const;
  std::size_t max_generator() const;  // 0 for the empty word

  friend Word operator*(const Word& a, const Word& b);
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syllables_;
};

// u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);

}  // namespace jumploci

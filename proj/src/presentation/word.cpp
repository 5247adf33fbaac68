#include "presentation/word.hpp"

#include <algorithm>

namespace jumploci {

namespace {

void push_reduced(std::vector<Syllable>& out, Syllable s) {
  if (s.exp == 0) return;
  if (!out.empty() && out.back().gen == s.gen) {
    out.back().exp += s.exp;
    if (out.back().exp == 0) out.pop_back();
    return;
  }
  out.push_back(s);
}

}  // namespace

Word::Word(std::vector<Syllable> syllables) {
  syllables_.reserve(syllables.size());
  for (const auto& s : syllables) push_reduced(syllables_, s);
}

Word Word::generator(std::size_t gen, std::int64_t exp) { return Word({Syllable{gen, exp}}); }

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const auto& s : syllables_) n += static_cast<std::size_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

Word Word::inverse() const {
  Word w;
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    w.syllables_.push_back(Syllable{it->gen, -it->exp});
  return w;
}

Word Word::power(std::int64_t n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word out;
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

Word Word::cyclically_reduced() const {
  std::vector<Syllable> s = syllables_;
  while (s.size() > 1 && s.front().gen == s.back().gen) {
    const Syllable merged{s.front().gen, s.front().exp + s.back().exp};
    s.pop_back();
    s.erase(s.begin());
    if (merged.exp == 0) continue;
    // conjugating moves the merged syllable to the end; it can still clash
    // with the new first syllable only after further peeling
    s.push_back(merged);
    if (s.size() > 1 && s.front().gen == s.back().gen) continue;
    break;
  }
  return Word(std::move(s));
}

std::vector<std::int64_t> Word::exponent_sums(std::size_t ngens) const {
  std::vector<std::int64_t> v(ngens, 0);
  for (const auto& s : syllables_) v.at(s.gen) += s.exp;
  return v;
}

std::vector<Syllable> Word::letters() const {
  std::vector<Syllable> out;
  out.reserve(length());
  for (const auto& s : syllables_) {
    const std::int64_t step = s.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i != s.exp; i += step) out.push_back(Syllable{s.gen, step});
  }
  return out;
}

std::size_t Word::max_generator() const {
  std::size_t m = 0;
  for (const auto& s : syllables_) m = std::max(m, s.gen);
  return m;
}

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  for (const auto& s : b.syllables_) push_reduced(w.syllables_, s);
  return w;
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

}  // namespace jumploci

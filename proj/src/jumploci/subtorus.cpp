#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "algebra/linear.hpp"
#include "jumploci/jumploci.hpp"

namespace jumploci {

JumpLociContext::JumpLociContext(Presentation p)
    : p_(std::move(p)), a_(alexander_matrix(p_)), cup_(cup_tensor(p_)) {}

const CharVarIdeal& JumpLociContext::ideal(std::size_t k) {
  auto it = ideals_.find(k);
  if (it == ideals_.end()) it = ideals_.emplace(k, charvar_ideal(a_, k)).first;
  return it->second;
}

std::size_t JumpLociContext::h1_at_random_point(const SubtorusComponent& s, std::mt19937_64& rng) const {
  const std::size_t nfree = a_.num_free_vars(), nvars = a_.nvars(), d = s.dim();
  if (s.directions.cols() != nfree) throw std::invalid_argument("subtorus directions have the wrong length");
  if (s.translate) {
    const std::uint64_t order = s.translate->order;
    const std::uint64_t p = prime_for_root_order(order);
    const PrimeField f(p);
    const auto zeta = f.root_of_unity(order);
    std::uniform_int_distribution<std::uint64_t> unit(2, p - 1);
    std::vector<std::uint64_t> params(d);
    for (auto& x : params) x = unit(rng);
    std::vector<std::uint64_t> coords(nvars);
    for (std::size_t j = 0; j < nvars; ++j) {
      std::uint64_t v = f.pow(zeta, s.translate->exponents[j]);
      if (j < nfree)
        for (std::size_t i = 0; i < d; ++i) v = f.mul(v, f.pow(params[i], s.directions(i, j).get_si()));
      coords[j] = v;
    }
    return h1_dim_at(p_, a_, CharacterPoint::mod_p(p, order, std::move(coords)));
  }
  std::vector<Rational> params(d);
  for (auto& x : params) x = random_rational(rng);
  std::vector<Rational> coords(nvars, Rational(1));
  for (std::size_t j = 0; j < nfree; ++j)
    for (std::size_t i = 0; i < d; ++i) coords[j] *= rational_pow(params[i], s.directions(i, j).get_si());
  return h1_dim_at(p_, a_, CharacterPoint::rational(std::move(coords)));
}

std::size_t JumpLociContext::generic_level(const SubtorusComponent& s, std::mt19937_64& rng) {
  for (std::size_t k = h1_at_random_point(s, rng); k >= 1; --k)
    if (subtorus_verify(ideal(k), s)) return k;
  return 0;
}

namespace {

class CandidatePool {
 public:
  CandidatePool(JumpLociContext& ctx, std::mt19937_64& rng) : ctx_(ctx), rng_(rng) {}

  // Returns true when the candidate was examined beyond the cheap test.
  void offer(SubtorusComponent s) {
    const std::size_t upper = ctx_.h1_at_random_point(s, rng_);
    if (upper == 0) return;
    // the generic level cannot beat the value at one point
    for (const auto& c : found_)
      if (c.k >= upper && subtorus_contains(c, s)) return;
    std::size_t level = 0;
    for (std::size_t k = upper; k >= 1; --k)
      if (subtorus_verify(ctx_.ideal(k), s)) {
        level = k;
        break;
      }
    if (level == 0) return;
    s.k = level;
    s.certified = true;
    for (const auto& c : found_)
      if (c.k >= level && subtorus_contains(c, s)) return;
    std::erase_if(found_, [&](const SubtorusComponent& c) { return c.k <= level && subtorus_contains(s, c); });
    found_.push_back(std::move(s));
  }

  std::vector<SubtorusComponent> take() { return std::move(found_); }

 private:
  JumpLociContext& ctx_;
  std::mt19937_64& rng_;
  std::vector<SubtorusComponent> found_;
};

SubtorusComponent coordinate_subtorus(std::size_t nfree, std::uint32_t mask) {
  SubtorusComponent s;
  s.directions = IntMatrix(static_cast<std::size_t>(std::popcount(mask)), nfree, Integer(0));
  std::size_t r = 0;
  for (std::size_t j = 0; j < nfree; ++j)
    if (mask >> j & 1) s.directions(r++, j) = 1;
  return s;
}

std::vector<std::uint32_t> masks_largest_first(std::size_t n) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
  return masks;
}

bool lex_less(const SubtorusComponent& a, const SubtorusComponent& b) {
  if (a.through_one() != b.through_one()) return a.through_one();
  if (a.dim() != b.dim()) return a.dim() > b.dim();
  if (a.directions.data() != b.directions.data()) return a.directions.data() < b.directions.data();
  if (a.translate && b.translate) {
    if (a.translate->order != b.translate->order) return a.translate->order < b.translate->order;
    return a.translate->exponents < b.translate->exponents;
  }
  return false;
}

}  // namespace

SubtorusSearchResult find_subtori(JumpLociContext& ctx, const std::vector<LinearComponent>& seeds,
                                  const SubtorusSearchConfig& config) {
  const std::size_t nfree = ctx.b1(), nvars = ctx.alexander().nvars();
  if (nfree > config.max_b1)
    throw std::invalid_argument("first Betti number " + std::to_string(nfree) + " exceeds the configured bound " +
                                std::to_string(config.max_b1));
  if (nfree > 24) throw std::invalid_argument("coordinate scan supports at most 24 free coordinates");
  std::mt19937_64 rng(config.seed);
  CandidatePool pool(ctx, rng);
  const auto masks = masks_largest_first(nfree);

  // through the trivial character
  for (auto mask : masks) pool.offer(coordinate_subtorus(nfree, mask));
  for (const auto& e : seeds) pool.offer(exp_map(e));

  SubtorusSearchResult result;
  std::size_t checks = 0;
  auto budget = [&] {
    if (checks >= config.max_translate_checks) {
      result.translate_scan_truncated = true;
      return false;
    }
    ++checks;
    return true;
  };

  // torsion characters of H_1, on every coordinate subtorus of the free part
  const auto& orders = ctx.alexander().torsion_orders;
  if (!orders.empty()) {
    std::vector<std::uint64_t> digits(orders.size(), 0);
    for (;;) {
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == orders[pos]) digits[pos++] = 0;
      if (pos == digits.size()) break;
      std::uint64_t order = 1;
      for (std::size_t j = 0; j < orders.size(); ++j)
        order = std::lcm(order, orders[j] / std::gcd(digits[j], orders[j]));
      TorsionTranslate t{order, std::vector<std::int64_t>(nvars, 0)};
      for (std::size_t j = 0; j < orders.size(); ++j)
        t.exponents[nfree + j] = static_cast<std::int64_t>(digits[j] * (order / orders[j]));
      for (auto mask : masks) {
        if (!budget()) break;
        auto s = coordinate_subtorus(nfree, mask);
        s.translate = t;
        pool.offer(std::move(s));
      }
      if (result.translate_scan_truncated) break;
    }
  }

  // translates of exact order N on coordinate subtori of the free part
  for (std::uint64_t order = 2; order <= config.torsion_bound && !result.translate_scan_truncated; ++order) {
    for (auto mask : masks) {
      std::vector<std::size_t> moving;  // coordinates carrying a root of unity
      for (std::size_t j = 0; j < nfree; ++j)
        if (!(mask >> j & 1)) moving.push_back(j);
      std::vector<std::uint64_t> step;  // allowed exponent step per moving coordinate
      for (std::size_t j = 0; j < moving.size(); ++j) step.push_back(1);
      for (std::size_t j = 0; j < orders.size(); ++j) {
        moving.push_back(nfree + j);
        step.push_back(order / std::gcd(order, orders[j]));
      }
      if (moving.empty()) continue;
      std::vector<std::uint64_t> digits(moving.size(), 0);
      for (;;) {
        std::size_t pos = 0;
        while (pos < digits.size()) {
          digits[pos] += step[pos];
          if (digits[pos] < order) break;
          digits[pos++] = 0;
        }
        if (pos == digits.size()) break;
        std::uint64_t g = order;
        for (auto d : digits) g = std::gcd(g, d);
        if (g != 1) continue;  // lower order: covered by a smaller N
        if (!budget()) break;
        TorsionTranslate t{order, std::vector<std::int64_t>(nvars, 0)};
        for (std::size_t j = 0; j < moving.size(); ++j) t.exponents[moving[j]] = static_cast<std::int64_t>(digits[j]);
        auto s = coordinate_subtorus(nfree, mask);
        s.translate = std::move(t);
        pool.offer(std::move(s));
      }
      if (result.translate_scan_truncated) break;
    }
  }

  result.candidates = pool.take();
  std::sort(result.candidates.begin(), result.candidates.end(), lex_less);
  return result;
}

std::vector<SubtorusComponent> components_at_level(const std::vector<SubtorusComponent>& candidates, std::size_t k) {
  std::vector<SubtorusComponent> out;
  for (const auto& c : candidates) {
    if (c.k < k) continue;
    bool maximal = true;
    for (const auto& d : candidates)
      if (&d != &c && d.k >= k && subtorus_contains(d, c) && !(subtorus_contains(c, d) && &d > &c)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  }
  return out;
}

}  // namespace jumploci

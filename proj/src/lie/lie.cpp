#include "lie/lie.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace jumploci {

namespace {

constexpr std::size_t kMaxBasisSize = 200000;

void axpy(LieVector& y, const Rational& a, const LieVector& x) {
  for (const auto& [k, c] : x) {
    auto [it, inserted] = y.try_emplace(k, a * c);
    if (!inserted) {
      it->second += a * c;
      if (it->second == 0) y.erase(it);
    }
  }
}

void series_axpy(NcSeries& y, const Rational& a, const NcSeries& x) {
  for (const auto& [w, c] : x) {
    auto [it, inserted] = y.try_emplace(w, a * c);
    if (!inserted) {
      it->second += a * c;
      if (it->second == 0) y.erase(it);
    }
  }
}

// Lyndon words of length <= n over an alphabet of size k, lexicographic (Duval).
std::vector<NcWord> lyndon_words(std::size_t k, unsigned n) {
  std::vector<NcWord> out;
  NcWord w{0};
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() + 1u == k) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

// Sparse row echelon form; pivot = smallest key, rows normalized to pivot 1.
class Echelon {
 public:
  // Reduces v in place; returns true and stores it when independent.
  bool insert(LieVector& v) {
    reduce(v);
    if (v.empty()) return false;
    const Rational lead = v.begin()->second;
    if (lead != 1)
      for (auto& [k, c] : v) c /= lead;
    rows_.emplace(v.begin()->first, v);
    return true;
  }
  void reduce(LieVector& v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const std::size_t key = it->first;
      axpy(v, -Rational(it->second), row->second);
      it = v.upper_bound(key);
    }
  }
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::size_t, LieVector>& rows() const { return rows_; }

 private:
  std::map<std::size_t, LieVector> rows_;
};

std::size_t sparse_rank(std::vector<LieVector> rows) {
  Echelon e;
  for (auto& r : rows) e.insert(r);
  return e.rank();
}

// exp(e * Y_gen) truncated
NcSeries exp_letter(std::uint8_t gen, std::int64_t e, unsigned degree) {
  NcSeries s;
  Rational c = 1;
  NcWord w;
  for (unsigned k = 0; k <= degree; ++k) {
    s.emplace(w, c);
    w.push_back(gen);
    c *= Rational(e, k + 1);
  }
  return s;
}

}  // namespace

std::vector<std::size_t> free_lie_dims(std::size_t n, unsigned max_degree) {
  if (n == 0) throw std::invalid_argument("free Lie algebra needs at least one generator");
  if (max_degree < 2 || max_degree > 6) throw std::invalid_argument("truncation degree must be in [2, 6]");
  auto mobius = [](unsigned m) {
    int mu = 1;
    for (unsigned p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        mu = -mu;
      }
    return m > 1 ? -mu : mu;
  };
  std::vector<std::size_t> dims;
  for (unsigned d = 1; d <= max_degree; ++d) {
    Integer sum = 0;
    for (unsigned e = 1; e <= d; ++e)
      if (d % e == 0) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), n, d / e);
        sum += mobius(e) * pw;
      }
    sum /= d;
    dims.push_back(sum.get_ui());
  }
  return dims;
}

FreeLieAlgebra::FreeLieAlgebra(std::size_t num_generators, unsigned max_degree) : n_(num_generators), degree_(max_degree) {
  if (n_ == 0 || n_ > 255) throw std::invalid_argument("free Lie algebra needs 1 to 255 generators");
  if (max_degree < 1 || max_degree > 6) throw std::invalid_argument("truncation degree must be in [1, 6]");
  std::size_t total = 0;
  if (max_degree >= 2)
    for (auto d : free_lie_dims(n_, max_degree)) total += d;
  if (total > kMaxBasisSize) throw std::invalid_argument("free Lie algebra truncation is too large");

  words_ = lyndon_words(n_, degree_);
  std::stable_sort(words_.begin(), words_.end(),
                   [](const NcWord& a, const NcWord& b) { return a.size() < b.size(); });
  offsets_.assign(degree_ + 1, 0);
  for (const auto& w : words_) ++offsets_[w.size()];
  for (unsigned d = 1; d <= degree_; ++d) offsets_[d] += offsets_[d - 1];
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);

  // standard bracketing: w = uv with v the longest proper Lyndon suffix
  expansions_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const NcWord& w = words_[i];
    if (w.size() == 1) {
      expansions_[i].emplace(w, Rational(1));
      continue;
    }
    for (std::size_t cut = 1; cut < w.size(); ++cut) {
      auto v = index_.find(NcWord(w.begin() + cut, w.end()));
      if (v == index_.end()) continue;
      const auto& pu = expansions_[index_.at(NcWord(w.begin(), w.begin() + cut))];
      const auto& pv = expansions_[v->second];
      NcSeries s = nc_multiply(pu, pv, degree_);
      series_axpy(s, Rational(-1), nc_multiply(pv, pu, degree_));
      expansions_[i] = std::move(s);
      break;
    }
  }

  ad_.assign(n_, std::vector<LieVector>(words_.size()));
  for (std::size_t g = 0; g < n_; ++g) {
    const NcSeries x{{NcWord{static_cast<std::uint8_t>(g)}, Rational(1)}};
    for (std::size_t j = 0; j < words_.size() && words_[j].size() < degree_; ++j) {
      NcSeries s = nc_multiply(x, expansions_[j], degree_);
      series_axpy(s, Rational(-1), nc_multiply(expansions_[j], x, degree_));
      ad_[g][j] = decompose(s);
    }
  }
}

std::optional<std::size_t> FreeLieAlgebra::index_of(const NcWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NcSeries FreeLieAlgebra::to_series(const LieVector& v) const {
  NcSeries s;
  for (const auto& [i, c] : v) series_axpy(s, c, expansions_[i]);
  return s;
}

LieVector FreeLieAlgebra::decompose(const NcSeries& f) const {
  // P(w) = w + lexicographically larger words of the same length
  NcSeries rest;
  for (const auto& [w, c] : f)
    if (w.size() <= degree_) rest.emplace(w, c);
  if (rest.count(NcWord{})) throw std::domain_error("series has a constant term");
  LieVector out;
  while (!rest.empty()) {
    // smallest word of the smallest length
    auto best = rest.begin();
    for (auto it = rest.begin(); it != rest.end(); ++it)
      if (it->first.size() < best->first.size()) best = it;
    auto idx = index_.find(best->first);
    if (idx == index_.end()) throw std::domain_error("series is not a Lie element");
    const Rational c = best->second;
    out.emplace(idx->second, c);
    series_axpy(rest, -c, expansions_[idx->second]);
  }
  return out;
}

LieVector FreeLieAlgebra::bracket(const LieVector& a, const LieVector& b) const {
  NcSeries sa = to_series(a), sb = to_series(b);
  NcSeries s = nc_multiply(sa, sb, degree_);
  series_axpy(s, Rational(-1), nc_multiply(sb, sa, degree_));
  return decompose(s);
}

LieVector FreeLieAlgebra::ad_generator(std::size_t gen, const LieVector& v) const {
  if (gen >= n_) throw std::out_of_range("generator index out of range");
  LieVector out;
  for (const auto& [i, c] : v)
    if (words_[i].size() < degree_) axpy(out, c, ad_[gen][i]);
  return out;
}

RelatorLogs relator_logs(const Presentation& p, unsigned max_degree) {
  if (max_degree < 2 || max_degree > 6) throw std::invalid_argument("truncation degree must be in [2, 6]");
  RelatorLogs out{FreeLieAlgebra(p.num_generators(), max_degree), {}};
  for (const auto& r : p.relators()) {
    // group-like image under x_i -> exp(Y_i)
    NcSeries g{{NcWord{}, Rational(1)}};
    for (const auto& s : r.syllables())
      g = nc_multiply(g, exp_letter(static_cast<std::uint8_t>(s.gen), s.exp, max_degree), max_degree);
    g.erase(NcWord{});
    // log(1 + Y) = sum (-1)^{k+1} Y^k / k
    NcSeries log, power = g;
    for (unsigned k = 1; k <= max_degree && !power.empty(); ++k) {
      series_axpy(log, Rational(k % 2 ? 1 : -1, k), power);
      power = nc_multiply(power, g, max_degree);
    }
    out.logs.push_back(out.algebra.decompose(log));
  }
  return out;
}

std::vector<unsigned> GradedQuotient::generator_degrees() const {
  std::vector<unsigned> out;
  for (std::size_t d = 0; d < generators.size(); ++d)
    if (generators[d] > 0) out.push_back(static_cast<unsigned>(d + 1));
  return out;
}

std::vector<unsigned> GradedQuotient::relation_degrees() const {
  std::vector<unsigned> out;
  for (std::size_t d = 0; d < relations.size(); ++d)
    if (relations[d] > 0) out.push_back(static_cast<unsigned>(d + 1));
  return out;
}

GradedQuotient malcev_truncation(const Presentation& p, unsigned max_degree) {
  if (max_degree < 2 || max_degree > 5) throw std::invalid_argument("truncation degree must be in [2, 5]");
  const unsigned D = max_degree;
  const RelatorLogs rl = relator_logs(p, D);
  const FreeLieAlgebra& L = rl.algebra;
  const std::size_t n = L.num_generators();

  // ideal generated by the logs: closure under ad(x_i); keys ordered by degree
  Echelon ideal;
  std::deque<LieVector> queue(rl.logs.begin(), rl.logs.end());
  while (!queue.empty()) {
    LieVector v = std::move(queue.front());
    queue.pop_front();
    if (!ideal.insert(v)) continue;
    for (std::size_t g = 0; g < n; ++g) {
      LieVector w = L.ad_generator(g, v);
      if (!w.empty()) queue.push_back(std::move(w));
    }
  }

  // initial forms: degree-d parts of rows whose pivot has degree d
  std::vector<Echelon> initial(D + 1);
  for (const auto& [pivot, row] : ideal.rows()) {
    const unsigned d = L.degree_of(pivot);
    LieVector part(row.begin(), row.lower_bound(L.degree_end(d)));
    initial[d].insert(part);
  }

  GradedQuotient q;
  q.degree = D;
  // quotient basis: non-pivot Lyndon elements, globally indexed
  std::vector<std::vector<std::size_t>> basis(D + 1);
  std::map<std::size_t, std::size_t> position;  // Lyndon index -> gr index
  std::vector<unsigned> gr_degree;
  for (unsigned d = 1; d <= D; ++d) {
    for (std::size_t i = L.degree_begin(d); i < L.degree_end(d); ++i)
      if (!initial[d].rows().count(i)) {
        basis[d].push_back(i);
        position.emplace(i, gr_degree.size());
        gr_degree.push_back(d);
      }
    q.dims.push_back(basis[d].size());
  }
  const std::size_t N = gr_degree.size();

  // bracket in gr of two basis elements, in gr coordinates
  std::map<std::pair<std::size_t, std::size_t>, LieVector> cache;
  std::vector<std::size_t> lyndon_of(N);
  for (const auto& [l, g] : position) lyndon_of[g] = l;
  auto gr_bracket = [&](std::size_t a, std::size_t b) -> const LieVector& {
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    LieVector out;
    const unsigned d = gr_degree[a] + gr_degree[b];
    if (d <= D) {
      LieVector v = L.bracket(LieVector{{lyndon_of[a], Rational(1)}}, LieVector{{lyndon_of[b], Rational(1)}});
      initial[d].reduce(v);
      for (const auto& [k, c] : v) out.emplace(position.at(k), c);
    }
    return cache.emplace(std::make_pair(a, b), std::move(out)).first->second;
  };

  // Chevalley-Eilenberg complex in internal degree d
  std::vector<std::size_t> by_degree_begin(D + 2, 0);
  for (unsigned d = 1; d <= D; ++d) by_degree_begin[d + 1] = by_degree_begin[d] + q.dims[d - 1];
  q.generators.assign(D, 0);
  q.relations.assign(D, 0);
  q.generators[0] = q.dims[0];
  for (unsigned d = 2; d <= D; ++d) {
    // Lambda^2 basis in degree d
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
    std::vector<LieVector> d2;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a + 1; b < N; ++b)
        if (gr_degree[a] + gr_degree[b] == d) {
          pair_index.emplace(std::make_pair(a, b), d2.size());
          d2.push_back(gr_bracket(a, b));
        }
    const std::size_t rank2 = sparse_rank(d2);
    // Lambda^3 -> Lambda^2
    std::vector<LieVector> d3;
    auto wedge_into = [&](LieVector& out, const Rational& sign, const LieVector& x, std::size_t c) {
      for (const auto& [e, coef] : x) {
        if (e == c) continue;
        const bool flip = e > c;
        const auto key = flip ? std::make_pair(c, e) : std::make_pair(e, c);
        axpy(out, flip ? Rational(-sign * coef) : Rational(sign * coef), LieVector{{pair_index.at(key), Rational(1)}});
      }
    };
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a + 1; b < N; ++b) {
        if (gr_degree[a] + gr_degree[b] >= d) continue;
        for (std::size_t c = b + 1; c < N; ++c) {
          if (gr_degree[a] + gr_degree[b] + gr_degree[c] != d) continue;
          LieVector v;
          wedge_into(v, Rational(1), gr_bracket(a, b), c);
          wedge_into(v, Rational(-1), gr_bracket(a, c), b);
          wedge_into(v, Rational(1), gr_bracket(b, c), a);
          d3.push_back(std::move(v));
        }
      }
    const std::size_t rank3 = sparse_rank(d3);
    q.relations[d - 1] = d2.size() - rank2 - rank3;
    q.generators[d - 1] = q.dims[d - 1] - rank2;
  }
  return q;
}

const char* to_string(VarietyClass c) {
  return c == VarietyClass::projective ? "projective" : "quasiprojective";
}

MorganVerdict morgan_degree_check(const GradedQuotient& q, VarietyClass c) {
  const unsigned needed = c == VarietyClass::projective ? 3 : 4;
  if (q.degree < needed)
    throw std::invalid_argument(std::string("truncation degree ") + std::to_string(q.degree) + " is too low for the " +
                                to_string(c) + " check; need at least " + std::to_string(needed));
  MorganVerdict v;
  v.truncation_degree = q.degree;
  v.generator_degrees = q.generator_degrees();
  v.relation_degrees = q.relation_degrees();
  if (c == VarietyClass::projective) {
    v.allowed_generator_degrees = {1};
    v.allowed_relation_degrees = {2};
  } else {
    v.allowed_generator_degrees = {1, 2};
    v.allowed_relation_degrees = {2, 3, 4};
  }
  auto allowed = [](const std::vector<unsigned>& set, unsigned d) {
    return std::find(set.begin(), set.end(), d) != set.end();
  };
  for (auto d : v.generator_degrees)
    if (!allowed(v.allowed_generator_degrees, d)) {
      v.pass = false;
      v.witness_degree = d;
      v.witness_kind = "generator";
      return v;
    }
  for (auto d : v.relation_degrees)
    if (!allowed(v.allowed_relation_degrees, d)) {
      v.pass = false;
      v.witness_degree = d;
      v.witness_kind = "relation";
      return v;
    }
  return v;
}

}  // namespace jumploci

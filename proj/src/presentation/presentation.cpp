#include "presentation/presentation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace jumploci {

Presentation::Presentation(std::vector<std::string> gen_names, std::vector<Word> relators)
    : gens_(std::move(gen_names)) {
  if (gens_.empty()) throw std::invalid_argument("a presentation needs at least one generator");
  std::set<std::string> seen;
  for (const auto& g : gens_)
    if (!seen.insert(g).second) throw std::invalid_argument("duplicate generator name " + g);
  for (auto& r : relators) {
    if (!r.empty() && r.max_generator() >= gens_.size())
      throw std::invalid_argument("relator uses a generator index out of range");
    Word c = r.cyclically_reduced();
    if (!c.empty()) rels_.push_back(std::move(c));
  }
}

IntMatrix Presentation::exponent_matrix() const {
  IntMatrix e(rels_.size(), gens_.size(), Integer(0));
  for (std::size_t r = 0; r < rels_.size(); ++r) {
    const auto sums = rels_[r].exponent_sums(gens_.size());
    for (std::size_t i = 0; i < sums.size(); ++i) e(r, i) = static_cast<long>(sums[i]);
  }
  return e;
}

SimpleGraph::SimpleGraph(std::vector<std::string> vertices,
                         std::vector<std::pair<std::size_t, std::size_t>> edges)
    : vertices_(std::move(vertices)), adj_(vertices_.size(), std::vector<bool>(vertices_.size(), false)) {
  std::set<std::string> names(vertices_.begin(), vertices_.end());
  if (names.size() != vertices_.size()) throw std::invalid_argument("duplicate vertex name");
  for (auto [a, b] : edges) {
    if (a >= vertices_.size() || b >= vertices_.size()) throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("loops are not allowed");
    if (a > b) std::swap(a, b);
    if (adj_[a][b]) throw std::invalid_argument("multi-edges are not allowed");
    adj_[a][b] = adj_[b][a] = true;
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
}

bool SimpleGraph::adjacent(std::size_t i, std::size_t j) const { return adj_.at(i).at(j); }

SimpleGraph SimpleGraph::complement() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (!adj_[i][j]) e.emplace_back(i, j);
  return SimpleGraph(vertices_, std::move(e));
}

SimpleGraph SimpleGraph::induced(const std::vector<std::size_t>& subset) const {
  std::vector<std::string> names;
  for (auto v : subset) names.push_back(vertices_.at(v));
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      if (adj_[subset[i]][subset[j]]) e.emplace_back(i, j);
  return SimpleGraph(std::move(names), std::move(e));
}

std::vector<std::vector<std::size_t>> SimpleGraph::components() const {
  std::vector<int> comp(size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<std::size_t> q;
    q.push(s);
    comp[s] = id;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      out.back().push_back(v);
      for (std::size_t w = 0; w < size(); ++w)
        if (adj_[v][w] && comp[w] < 0) {
          comp[w] = id;
          q.push(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  return names;
}

}  // namespace

Presentation free_group(std::size_t n) { return Presentation(default_names(n), {}); }

Presentation free_abelian_group(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return raag_presentation(SimpleGraph(default_names(n), std::move(edges)));
}

Presentation raag_presentation(const SimpleGraph& g) {
  std::vector<Word> rels;
  for (const auto& [a, b] : g.edges()) rels.push_back(commutator(Word::generator(a), Word::generator(b)));
  return Presentation(g.vertices(), std::move(rels));
}

Presentation surface_presentation(unsigned genus, unsigned punctures) {
  std::vector<std::string> names;
  for (unsigned i = 1; i <= genus; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
  }
  if (punctures == 0) {
    if (genus == 0) return Presentation({"a"}, {Word::generator(0)});
    Word r;
    for (std::size_t i = 0; i < genus; ++i)
      r = r * commutator(Word::generator(2 * i), Word::generator(2 * i + 1));
    return Presentation(std::move(names), {r});
  }
  // the surface relator solves for the last puncture loop: free of rank 2g+s-1
  for (unsigned j = 1; j < punctures; ++j) names.push_back("c" + std::to_string(j));
  if (names.empty()) return Presentation({"c1"}, {Word::generator(0)});
  return Presentation(std::move(names), {});
}

Presentation direct_product(const Presentation& p, const Presentation& q) {
  std::vector<std::string> names = p.generators();
  std::set<std::string> used(names.begin(), names.end());
  for (const auto& g : q.generators()) {
    std::string n = g;
    while (used.count(n)) n += "_2";
    used.insert(n);
    names.push_back(n);
  }
  const std::size_t shift = p.num_generators();
  std::vector<Word> rels = p.relators();
  for (const auto& r : q.relators()) {
    std::vector<Syllable> s = r.syllables();
    for (auto& x : s) x.gen += shift;
    rels.emplace_back(std::move(s));
  }
  for (std::size_t i = 0; i < p.num_generators(); ++i)
    for (std::size_t j = 0; j < q.num_generators(); ++j)
      rels.push_back(commutator(Word::generator(i), Word::generator(shift + j)));
  return Presentation(std::move(names), std::move(rels));
}

AbelianizationData abelianization(const Presentation& p) {
  AbelianizationData a;
  a.exponent_matrix = p.exponent_matrix();
  const auto dec = smith_decompose(a.exponent_matrix);
  a.smith = dec.form;
  const std::size_t n = p.num_generators();
  // row vector x -> x V carries the relation lattice onto the diagonal one
  std::vector<std::size_t> free_cols, torsion_cols;
  for (std::size_t j = 0; j < n; ++j) {
    const bool on_diag = j < dec.form.diag.size();
    if (!on_diag || dec.form.diag[j] == 0) free_cols.push_back(j);
    else if (dec.form.diag[j] > 1) torsion_cols.push_back(j);
  }
  a.b1 = free_cols.size();
  for (auto j : torsion_cols) a.torsion.push_back(dec.form.diag[j]);
  a.basis_map = IntMatrix(n, free_cols.size(), Integer(0));
  a.torsion_map = IntMatrix(n, torsion_cols.size(), Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < free_cols.size(); ++k) a.basis_map(i, k) = dec.right(i, free_cols[k]);
    for (std::size_t k = 0; k < torsion_cols.size(); ++k) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), dec.right(i, torsion_cols[k]).get_mpz_t(), a.torsion[k].get_mpz_t());
      a.torsion_map(i, k) = r;
    }
  }
  a.coordinate_words = IntMatrix(free_cols.size() + torsion_cols.size(), n, Integer(0));
  std::size_t row = 0;
  for (auto j : free_cols) {
    for (std::size_t i = 0; i < n; ++i) a.coordinate_words(row, i) = dec.right_inverse(j, i);
    ++row;
  }
  for (auto j : torsion_cols) {
    for (std::size_t i = 0; i < n; ++i) a.coordinate_words(row, i) = dec.right_inverse(j, i);
    ++row;
  }
  return a;
}

Presentation cyclic_cover_presentation(const Presentation& p, std::span<const std::int64_t> phi,
                                       std::uint64_t order) {
  const std::size_t n = p.num_generators();
  if (order == 0) throw std::invalid_argument("cover order must be positive");
  if (phi.size() != n) throw std::invalid_argument("phi needs one image per generator");
  const auto N = static_cast<std::int64_t>(order);
  auto mod = [N](std::int64_t v) { return ((v % N) + N) % N; };
  std::vector<std::int64_t> img(n);
  std::int64_t g = N;
  for (std::size_t i = 0; i < n; ++i) {
    img[i] = mod(phi[i]);
    g = std::gcd(g, img[i]);
  }
  if (g != 1 && N != 1) throw std::invalid_argument("phi is not surjective onto Z/N");
  for (const auto& r : p.relators()) {
    std::int64_t s = 0;
    for (const auto& syl : r.syllables()) s = mod(s + mod(syl.exp) * img[syl.gen]);
    if (s != 0) throw std::invalid_argument("phi does not kill every relator (not a homomorphism)");
  }

  // Schreier transversal: powers of a generator mapping to 1 when there is
  // one, otherwise a breadth-first spanning tree of the coset graph.
  std::vector<std::vector<bool>> tree(order, std::vector<bool>(n, false));
  auto unit = std::find(img.begin(), img.end(), 1 % N);
  if (unit != img.end()) {
    const auto i = static_cast<std::size_t>(unit - img.begin());
    for (std::int64_t c = 0; c + 1 < N; ++c) tree[static_cast<std::size_t>(c)][i] = true;
  } else {
    std::vector<bool> seen(order, false);
    std::queue<std::int64_t> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      const std::int64_t c = q.front();
      q.pop();
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t fwd = mod(c + img[i]);
        if (!seen[static_cast<std::size_t>(fwd)]) {
          seen[static_cast<std::size_t>(fwd)] = true;
          tree[static_cast<std::size_t>(c)][i] = true;
          q.push(fwd);
        }
        const std::int64_t back = mod(c - img[i]);
        if (!seen[static_cast<std::size_t>(back)]) {
          seen[static_cast<std::size_t>(back)] = true;
          tree[static_cast<std::size_t>(back)][i] = true;  // T_back x_i = T_c
          q.push(back);
        }
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::int64_t>> symbol(order, std::vector<std::int64_t>(n, -1));
  std::set<std::string> used;
  for (std::size_t c = 0; c < order; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      if (tree[c][i]) continue;
      std::string name = p.generators()[i] + "_" + std::to_string(c);
      while (!used.insert(name).second) name += "_";
      symbol[c][i] = static_cast<std::int64_t>(names.size());
      names.push_back(std::move(name));
    }
  if (names.empty()) names.push_back("e");  // trivial kernel

  std::vector<Word> rels;
  std::set<Word> seen_rels;
  for (std::int64_t c0 = 0; c0 < N; ++c0)
    for (const auto& r : p.relators()) {
      std::vector<Syllable> out;
      std::int64_t cur = c0;
      for (const auto& l : r.letters()) {
        if (l.exp > 0) {
          const auto s = symbol[static_cast<std::size_t>(cur)][l.gen];
          if (s >= 0) out.push_back(Syllable{static_cast<std::size_t>(s), 1});
          cur = mod(cur + img[l.gen]);
        } else {
          cur = mod(cur - img[l.gen]);
          const auto s = symbol[static_cast<std::size_t>(cur)][l.gen];
          if (s >= 0) out.push_back(Syllable{static_cast<std::size_t>(s), -1});
        }
      }
      Word w = Word(std::move(out)).cyclically_reduced();
      if (!w.empty() && seen_rels.insert(w).second) rels.push_back(std::move(w));
    }
  return Presentation(std::move(names), std::move(rels));
}

}  // namespace jumploci

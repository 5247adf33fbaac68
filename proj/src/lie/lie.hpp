#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fox/magnus.hpp"
#include "presentation/presentation.hpp"

namespace jumploci {

// Sparse coordinates in the Lyndon basis, keyed by basis index.
using LieVector = std::map<std::size_t, Rational>;

// Witt numbers: dimension of the degree-d part of the free Lie algebra on n
// generators, d = 1..max_degree. Requires n >= 1 and 2 <= max_degree <= 6.
std::vector<std::size_t> free_lie_dims(std::size_t n, unsigned max_degree);

// Free Lie algebra truncated above max_degree, realized inside the free
// associative algebra. Basis: Lyndon words ordered by length, then
// lexicographically; basis element w is its standard bracketing P(w).
class FreeLieAlgebra {
 public:
  FreeLieAlgebra(std::size_t num_generators, unsigned max_degree);

  std::size_t num_generators() const { return n_; }
  unsigned max_degree() const { return degree_; }
  std::size_t size() const { return words_.size(); }
  const NcWord& word(std::size_t i) const { return words_[i]; }
  unsigned degree_of(std::size_t i) const { return static_cast<unsigned>(words_[i].size()); }
  // basis indices [begin, end) of degree d
  std::size_t degree_begin(unsigned d) const { return offsets_[d - 1]; }
  std::size_t degree_end(unsigned d) const { return offsets_[d]; }
  std::optional<std::size_t> index_of(const NcWord& w) const;

  // P(w) expanded as a noncommutative polynomial
  const NcSeries& expansion(std::size_t i) const { return expansions_[i]; }
  NcSeries to_series(const LieVector& v) const;
  // Inverse of to_series on Lie elements; throws std::domain_error on a
  // series that is not a Lie polynomial. Parts above max_degree are dropped.
  LieVector decompose(const NcSeries& f) const;

  // Truncated bracket.
  LieVector bracket(const LieVector& a, const LieVector& b) const;
  // [x_gen, v], from a precomputed table
  LieVector ad_generator(std::size_t gen, const LieVector& v) const;
  LieVector generator(std::size_t gen) const { return LieVector{{gen, Rational(1)}}; }

 private:
  std::size_t n_;
  unsigned degree_;
  std::vector<NcWord> words_;
  std::vector<std::size_t> offsets_;
  std::map<NcWord, std::size_t> index_;
  std::vector<NcSeries> expansions_;
  std::vector<std::vector<LieVector>> ad_;  // ad_[gen][basis index]
};

struct RelatorLogs {
  FreeLieAlgebra algebra;
  std::vector<LieVector> logs;  // log of the Magnus image of each relator
};

// Requires 2 <= max_degree <= 6.
RelatorLogs relator_logs(const Presentation& p, unsigned max_degree);

// Associated graded of the truncated Malcev Lie algebra, degrees 1..D.
// Degree d here corresponds to weight -d.
struct GradedQuotient {
  unsigned degree = 0;
  std::vector<std::size_t> dims;        // dims[d-1] = dim gr_d
  std::vector<std::size_t> generators;  // minimal generators per degree
  std::vector<std::size_t> relations;   // minimal relations per degree (2-homology)

  std::vector<unsigned> generator_degrees() const;
  std::vector<unsigned> relation_degrees() const;
};

// Requires 2 <= max_degree <= 5.
GradedQuotient malcev_truncation(const Presentation& p, unsigned max_degree = 4);

enum class VarietyClass { projective, quasiprojective };

const char* to_string(VarietyClass c);

struct MorganVerdict {
  bool pass = true;
  unsigned truncation_degree = 0;
  std::vector<unsigned> generator_degrees;
  std::vector<unsigned> relation_degrees;
  std::vector<unsigned> allowed_generator_degrees;
  std::vector<unsigned> allowed_relation_degrees;
  std::optional<unsigned> witness_degree;
  std::string witness_kind;  // "generator" or "relation" on failure
};

// Throws std::invalid_argument when the truncation is too shallow for the
// class (3 for projective, 4 for quasi-projective).
MorganVerdict morgan_degree_check(const GradedQuotient& q, VarietyClass c);

}  // namespace jumploci

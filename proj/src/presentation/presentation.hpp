#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra/matrix.hpp"
#include "algebra/smith.hpp"
#include "presentation/word.hpp"

namespace jumploci {

// Input document error with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Finite presentation. Relators are stored freely and cyclically reduced;
// trivial relators are dropped. Generator order is the order given.
class Presentation {
 public:
  Presentation(std::vector<std::string> gen_names, std::vector<Word> relators);

  const std::vector<std::string>& generators() const { return gens_; }
  const std::vector<Word>& relators() const { return rels_; }
  std::size_t num_generators() const { return gens_.size(); }
  std::size_t num_relators() const { return rels_.size(); }

  // m x n matrix of relator exponent sums.
  IntMatrix exponent_matrix() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> gens_;
  std::vector<Word> rels_;
};

class SimpleGraph {
 public:
  SimpleGraph(std::vector<std::string> vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  // sorted pairs (i < j)
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::size_t size() const { return vertices_.size(); }
  bool adjacent(std::size_t i, std::size_t j) const;
  SimpleGraph complement() const;
  SimpleGraph induced(const std::vector<std::size_t>& subset) const;
  // connected components as sorted vertex lists, ordered by first vertex
  std::vector<std::vector<std::size_t>> components() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<bool>> adj_;
};

struct AbelianizationData {
  std::size_t b1 = 0;
  std::vector<Integer> torsion;
  // n x b1: image of each generator in the chosen basis of the free part
  IntMatrix basis_map;
  // n x torsion.size(): image of each generator in each cyclic factor, reduced
  IntMatrix torsion_map;
  // (b1 + torsion.size()) x n: exponent vector of a word representing each
  // basis element; a character's coordinate is the value on that word
  IntMatrix coordinate_words;
  IntMatrix exponent_matrix;
  SmithForm smith;
};

Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);
std::string format_word(const Word& w, const std::vector<std::string>& names);

SimpleGraph parse_graph(std::string_view text);
std::string format_graph(const SimpleGraph& g);

Presentation free_group(std::size_t n);
Presentation free_abelian_group(std::size_t n);
Presentation raag_presentation(const SimpleGraph& g);
Presentation surface_presentation(unsigned genus, unsigned punctures);
Presentation direct_product(const Presentation& p, const Presentation& q);

AbelianizationData abelianization(const Presentation& p);

// Kernel of phi: G -> Z/N, phi given by generator images, via Schreier
// rewriting. Throws std::invalid_argument when phi is not a surjective
// homomorphism.
Presentation cyclic_cover_presentation(const Presentation& p, std::span<const std::int64_t> phi,
                                       std::uint64_t order);

}  // namespace jumploci

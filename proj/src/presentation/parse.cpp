#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "presentation/presentation.hpp"

namespace jumploci {

namespace {

enum class Tok { Name, Int, Caret, LParen, RParen, LBrack, RBrack, Comma, Keyword, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

// Tokens of one physical line; comments stripped.
std::vector<Token> lex_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (name_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && name_char(line[j])) ++j;
      if (j < line.size() && line[j] == ':') {
        out.push_back({Tok::Keyword, std::string(line.substr(i, j - i + 1)), lineno, col});
        i = j + 1;
      } else {
        out.push_back({Tok::Name, std::string(line.substr(i, j - i)), lineno, col});
        i = j;
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && i + 1 < line.size() &&
                                                         std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      std::size_t j = i + 1;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Int, std::string(line.substr(i, j - i)), lineno, col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case ',': k = Tok::Comma; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
    }
    out.push_back({k, std::string(1, c), lineno, col});
    ++i;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::size_t length;
  std::vector<Token> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> lines;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++lineno;
    auto toks = lex_line(raw, lineno);
    if (!toks.empty()) lines.push_back({lineno, raw.size(), std::move(toks)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

class WordParser {
 public:
  WordParser(const Line& line, std::size_t first, const std::map<std::string, std::size_t>& gens)
      : line_(line), pos_(first), gens_(gens) {}

  Word parse_all() {
    Word w = parse_word();
    if (pos_ != line_.tokens.size()) {
      const Token& t = line_.tokens[pos_];
      throw ParseError("unexpected '" + t.text + "'", t.line, t.column);
    }
    return w;
  }

 private:
  const Token* peek() const { return pos_ < line_.tokens.size() ? &line_.tokens[pos_] : nullptr; }

  std::size_t end_column() const { return line_.length + 1; }

  bool starts_atom() const {
    const Token* t = peek();
    return t && (t->kind == Tok::Name || t->kind == Tok::LParen || t->kind == Tok::LBrack);
  }

  Word parse_word() {
    if (!starts_atom()) {
      const Token* t = peek();
      if (t) throw ParseError("expected a generator, '(' or '[' but found '" + t->text + "'", t->line, t->column);
      throw ParseError("expected a generator, '(' or '['", line_.number, end_column());
    }
    Word w;
    while (starts_atom()) w = w * parse_term();
    return w;
  }

  Word parse_term() {
    Word atom = parse_atom();
    const Token* t = peek();
    if (t && t->kind == Tok::Caret) {
      ++pos_;
      const Token* n = peek();
      if (!n || n->kind != Tok::Int)
        throw ParseError("expected an integer exponent after '^'", n ? n->line : line_.number,
                         n ? n->column : end_column());
      std::int64_t e = 0;
      try {
        e = std::stoll(n->text);
      } catch (const std::exception&) {
        throw ParseError("exponent out of range", n->line, n->column);
      }
      ++pos_;
      return atom.power(e);
    }
    return atom;
  }

  Word parse_atom() {
    const Token& t = line_.tokens[pos_];
    if (t.kind == Tok::Name) {
      auto it = gens_.find(t.text);
      if (it == gens_.end()) throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
      ++pos_;
      return Word::generator(it->second);
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      Word inner = parse_word();
      expect(Tok::RParen, "expected ')'");
      return inner;
    }
    // commutator
    ++pos_;
    if (!starts_atom()) malformed_commutator();
    Word u = parse_word();
    if (!peek() || peek()->kind != Tok::Comma) malformed_commutator();
    ++pos_;
    if (!starts_atom()) malformed_commutator();
    Word v = parse_word();
    if (!peek() || peek()->kind != Tok::RBrack) malformed_commutator();
    ++pos_;
    return commutator(u, v);
  }

  [[noreturn]] void malformed_commutator() const {
    const Token* t = peek();
    throw ParseError("malformed commutator, expected [word,word]", t ? t->line : line_.number,
                     t ? t->column : end_column());
  }

  void expect(Tok kind, const char* message) {
    const Token* t = peek();
    if (!t || t->kind != kind)
      throw ParseError(message, t ? t->line : line_.number, t ? t->column : end_column());
    ++pos_;
  }

  const Line& line_;
  std::size_t pos_;
  const std::map<std::string, std::size_t>& gens_;
};

const Token& expect_keyword(const std::vector<Line>& lines, std::size_t index, const std::string& kw,
                            std::size_t last_line) {
  if (index >= lines.size()) throw ParseError("expected '" + kw + "'", last_line + 1, 1);
  const Token& t = lines[index].tokens.front();
  if (t.kind != Tok::Keyword || t.text != kw) throw ParseError("expected '" + kw + "'", t.line, t.column);
  return t;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  const auto lines = lex(text);
  if (lines.empty()) throw ParseError("expected 'gens:'", 1, 1);
  const Token& kw = expect_keyword(lines, 0, "gens:", 0);
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 1; i < lines[0].tokens.size(); ++i) {
    const Token& t = lines[0].tokens[i];
    if (t.kind != Tok::Name) throw ParseError("expected a generator name but found '" + t.text + "'", t.line, t.column);
    if (!index.emplace(t.text, names.size()).second)
      throw ParseError("duplicate generator '" + t.text + "'", t.line, t.column);
    names.push_back(t.text);
  }
  if (names.empty()) throw ParseError("empty generator list", kw.line, kw.column + kw.text.size());

  expect_keyword(lines, 1, "rels:", lines[0].number);
  std::vector<Word> rels;
  if (lines[1].tokens.size() > 1) rels.push_back(WordParser(lines[1], 1, index).parse_all());
  for (std::size_t l = 2; l < lines.size(); ++l) {
    const Token& t = lines[l].tokens.front();
    if (t.kind == Tok::Keyword) throw ParseError("unexpected '" + t.text + "'", t.line, t.column);
    rels.push_back(WordParser(lines[l], 0, index).parse_all());
  }
  return Presentation(std::move(names), std::move(rels));
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : w.syllables()) {
    if (!first) os << ' ';
    first = false;
    os << names.at(s.gen);
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens:";
  for (const auto& g : p.generators()) os << ' ' << g;
  os << "\nrels:\n";
  for (const auto& r : p.relators()) os << format_word(r, p.generators()) << '\n';
  return os.str();
}

SimpleGraph parse_graph(std::string_view text) {
  const auto lines = lex(text);
  if (lines.empty()) throw ParseError("expected 'vertices:'", 1, 1);
  const Token& kw = expect_keyword(lines, 0, "vertices:", 0);
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 1; i < lines[0].tokens.size(); ++i) {
    const Token& t = lines[0].tokens[i];
    if (t.kind != Tok::Name) throw ParseError("expected a vertex name but found '" + t.text + "'", t.line, t.column);
    if (!index.emplace(t.text, names.size()).second)
      throw ParseError("duplicate vertex '" + t.text + "'", t.line, t.column);
    names.push_back(t.text);
  }
  if (names.empty()) throw ParseError("empty vertex list", kw.line, kw.column + kw.text.size());
  const Token& ekw = expect_keyword(lines, 1, "edges:", lines[0].number);
  if (lines[1].tokens.size() > 1) {
    const Token& t = lines[1].tokens[1];
    throw ParseError("edges start on the line after 'edges:'", t.line, t.column);
  }
  (void)ekw;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t l = 2; l < lines.size(); ++l) {
    const auto& toks = lines[l].tokens;
    for (const auto& t : toks)
      if (t.kind != Tok::Name) throw ParseError("expected a vertex name but found '" + t.text + "'", t.line, t.column);
    if (toks.size() != 2) {
      const Token& t = toks.size() > 2 ? toks[2] : toks[0];
      throw ParseError("an edge is exactly two vertex names", t.line, t.column);
    }
    std::size_t ends[2];
    for (int k = 0; k < 2; ++k) {
      auto it = index.find(toks[k].text);
      if (it == index.end()) throw ParseError("unknown vertex '" + toks[k].text + "'", toks[k].line, toks[k].column);
      ends[k] = it->second;
    }
    if (ends[0] == ends[1]) throw ParseError("loop edge", toks[1].line, toks[1].column);
    auto e = std::minmax(ends[0], ends[1]);
    if (!seen.insert(e).second) throw ParseError("duplicate edge", toks[0].line, toks[0].column);
    edges.emplace_back(e.first, e.second);
  }
  return SimpleGraph(std::move(names), std::move(edges));
}

std::string format_graph(const SimpleGraph& g) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& v : g.vertices()) os << ' ' << v;
  os << "\nedges:\n";
  for (const auto& [a, b] : g.edges()) os << g.vertices()[a] << ' ' << g.vertices()[b] << '\n';
  return os.str();
}

}  // namespace jumploci

#ifndef DSMOOTH_PRESFMT_HPP
#define DSMOOTH_PRESFMT_HPP

// Text format for presentations (.alg files):
//
//   document   := block+
//   block      := "algebra" NAME "{" decl* "}"
//   decl       := "base" ("rational" | "cyclotomic") ";"
//               | "params" [IDENT ("," IDENT)*] ";"
//               | "generators" IDENT ("," IDENT)* ";"
//               | "relations" "{" (expr ["=" expr] ";")* "}"
//               | "calculus" "{" ("nu" "[" IDENT "]" ":" IDENT "->" expr ";")* "}"
//               | "constraint" expr "=" expr ";"
//   expr       := term (("+" | "-") term)*
//   term       := factor (("*" | "/") factor)*
//   factor     := ("+" | "-") factor | primary ["^" INT]
//   primary    := INT | IDENT | "w" | "(" expr ")"
//
// "w" is a primitive cube root of unity (needs "base cyclotomic"). Calculus
// entries not listed default to the identity. "#" starts a comment.

#include "dsmooth/automorphism.hpp"
#include "dsmooth/presentation.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsmooth {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + reason),
        line(line),
        column(column),
        reason(reason) {}
  std::size_t line;
  std::size_t column;
  std::string reason;
};

struct AlgebraDecl {
  Presentation presentation;
  /// Present iff the block had a calculus section.
  std::optional<AutomorphismTable<ParamScalar>> table;

  friend bool operator==(const AlgebraDecl& a, const AlgebraDecl& b) = default;
};

struct Document {
  std::vector<AlgebraDecl> algebras;

  friend bool operator==(const Document& a, const Document& b) = default;
};

namespace presfmt_detail {

enum class Tok { ident, integer, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;  // byte offset of the first character
  std::size_t end = 0;     // one past the last character
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.offset = i;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::integer;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::punct;
      t.text = "->";
      advance(2);
    } else if (std::string_view("{}[]();,:+-*/^=").find(c) != std::string_view::npos) {
      t.kind = Tok::punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + std::to_string(+c);
      throw ParseError(line, col, "unexpected character '" + shown + "'");
    }
    t.end = i;
    out.push_back(std::move(t));
  }
  Token e;
  e.offset = e.end = src.size();
  e.line = line;
  e.column = col;
  out.push_back(e);
  return out;
}

inline bool is_keyword(const std::string& s) {
  static const char* const words[] = {"algebra", "base",     "params", "generators", "relations", "calculus",
                                      "constraint", "nu",   "w",      "rational",   "cyclotomic"};
  for (const char* w : words) {
    if (s == w) return true;
  }
  return false;
}

/// Collapses whitespace runs (and drops comments) to single spaces.
inline std::string squeeze(std::string_view s) {
  std::string out;
  bool space = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      space = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(lex(src)) {}
  /// Parser for a bare expression over the given names.
  Parser(std::string_view src, std::vector<std::string> gens, std::vector<std::string> params, bool cyclotomic)
      : src_(src), toks_(lex(src)), gens_(std::move(gens)), params_(std::move(params)), cyclotomic_(cyclotomic) {}

  Element<ParamScalar> expression() {
    E e = expr();
    if (peek().kind != Tok::end) error(peek(), "unexpected " + describe(peek()) + " after expression");
    return e;
  }

  Document document() {
    Document doc;
    if (peek().kind == Tok::end) error(peek(), "expected 'algebra' block");
    while (peek().kind != Tok::end) doc.algebras.push_back(block());
    return doc;
  }

 private:
  using E = Element<ParamScalar>;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(const char* punct) const { return peek().kind == Tok::punct && peek().text == punct; }
  bool at_word(const char* w) const { return peek().kind == Tok::ident && peek().text == w; }

  [[noreturn]] static void error(const Token& t, const std::string& reason) { throw ParseError(t.line, t.column, reason); }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

  const Token& expect(const char* punct) {
    if (!at(punct)) error(peek(), std::string("expected '") + punct + "', found " + describe(peek()));
    return next();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) error(peek(), std::string("expected '") + w + "', found " + describe(peek()));
    next();
  }
  std::string identifier(const char* what) {
    if (peek().kind != Tok::ident) error(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    if (is_keyword(peek().text)) error(peek(), "'" + peek().text + "' is reserved and cannot be used as " + what);
    return next().text;
  }

  /// Algebra names may contain dashes written without spaces ("monomial-squares").
  std::string name() {
    std::string out = identifier("an algebra name");
    while (at("-") && peek().offset == toks_[pos_ - 1].end && (peek(1).kind == Tok::ident || peek(1).kind == Tok::integer) &&
           peek(1).offset == peek().end) {
      next();
      out += "-" + next().text;
    }
    return out;
  }

  AlgebraDecl block() {
    expect_word("algebra");
    AlgebraDecl decl;
    Presentation& p = decl.presentation;
    p.name = name();
    expect("{");
    gens_.clear();
    params_.clear();
    cyclotomic_ = false;
    bool have_generators = false, have_relations = false, have_base = false, have_params = false;
    std::vector<std::pair<Token, std::string>> pending;
    while (!at("}")) {
      const Token& t = peek();
      if (t.kind != Tok::ident) error(t, "expected a declaration, found " + describe(t));
      if (t.text == "base") {
        if (have_base) error(t, "duplicate base declaration");
        have_base = true;
        next();
        if (at_word("rational")) {
          p.base = BaseField::rational;
        } else if (at_word("cyclotomic")) {
          p.base = BaseField::cyclotomic;
        } else {
          error(peek(), "base must be 'rational' or 'cyclotomic'");
        }
        cyclotomic_ = p.base == BaseField::cyclotomic;
        next();
        expect(";");
      } else if (t.text == "params") {
        if (have_params) error(t, "duplicate params declaration");
        if (have_relations) error(t, "params must be declared before relations");
        have_params = true;
        next();
        if (!at(";")) {
          for (;;) {
            const Token& at_tok = peek();
            std::string n = identifier("a parameter name");
            if (std::find(params_.begin(), params_.end(), n) != params_.end()) error(at_tok, "duplicate parameter '" + n + "'");
            params_.push_back(n);
            if (!at(",")) break;
            next();
          }
        }
        expect(";");
        p.parameters = params_;
      } else if (t.text == "generators") {
        if (have_generators) error(t, "duplicate generators declaration");
        have_generators = true;
        next();
        for (;;) {
          const Token& at_tok = peek();
          std::string n = identifier("a generator name");
          if (std::find(gens_.begin(), gens_.end(), n) != gens_.end()) error(at_tok, "duplicate generator '" + n + "'");
          if (std::find(params_.begin(), params_.end(), n) != params_.end()) {
            error(at_tok, "'" + n + "' is already a parameter");
          }
          gens_.push_back(n);
          if (!at(",")) break;
          next();
        }
        if (gens_.size() > 16) error(t, "at most 16 generators are supported");
        expect(";");
        p.generators = gens_;
      } else if (t.text == "relations") {
        if (have_relations) error(t, "duplicate relations block");
        if (!have_generators) error(t, "missing generators declaration before relations");
        have_relations = true;
        const Token open = next();
        expect("{");
        while (!at("}")) p.relations.push_back(relation());
        if (p.relations.empty()) error(open, "relation list nonempty: the relations block is empty");
        next();
      } else if (t.text == "calculus") {
        if (decl.table) error(t, "duplicate calculus block");
        if (!have_generators) error(t, "missing generators declaration before calculus");
        next();
        expect("{");
        AutomorphismTable<ParamScalar> table(gens_.size());
        while (!at("}")) nu_entry(table);
        next();
        decl.table = std::move(table);
      } else if (t.text == "constraint") {
        next();
        p.constraints.push_back(constraint());
      } else {
        error(t, "unknown declaration '" + t.text + "'");
      }
    }
    const Token& close = next();
    if (!have_generators) error(close, "missing generators declaration in algebra '" + p.name + "'");
    if (!have_relations) error(close, "relation list nonempty: algebra '" + p.name + "' declares no relations");
    return decl;
  }

  Relation relation() {
    const Token start = peek();
    E lhs = expr();
    if (at("=")) {
      next();
      lhs -= expr();
    }
    std::string text = squeeze(src_.substr(start.offset, peek().offset - start.offset));
    expect(";");
    if (lhs.is_zero()) error(start, "relation is zero");
    if (!lhs.is_homogeneous()) error(start, "relation is not homogeneous");
    if (lhs.max_degree() != 2) {
      error(start, "relation has degree " + std::to_string(lhs.max_degree()) + "; only quadratic relations are allowed");
    }
    return {lhs, text};
  }

  Constraint constraint() {
    const Token start = peek();
    E lhs = expr();
    expect("=");
    E rhs = expr();
    std::string text = squeeze(src_.substr(start.offset, peek().offset - start.offset));
    expect(";");
    E diff = lhs - rhs;
    if (diff.max_degree() != 0) error(start, "constraint may involve parameters only");
    return {text, diff.coefficient(Word())};
  }

  void nu_entry(AutomorphismTable<ParamScalar>& table) {
    expect_word("nu");
    expect("[");
    std::size_t i = generator_index("a generator name");
    expect("]");
    expect(":");
    std::size_t a = generator_index("a generator name");
    expect("->");
    const Token start = peek();
    E img = expr();
    expect(";");
    if (!img.is_zero() && (!img.is_homogeneous() || img.max_degree() != 1)) {
      error(start, "automorphism image must be linear in the generators");
    }
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      table.set_entry(i, a, k, img.coefficient(Word{static_cast<std::uint8_t>(k)}));
    }
  }

  std::size_t generator_index(const char* what) {
    const Token& t = peek();
    std::string n = identifier(what);
    auto it = std::find(gens_.begin(), gens_.end(), n);
    if (it == gens_.end()) error(t, "unknown identifier '" + n + "' (not a generator)");
    return static_cast<std::size_t>(it - gens_.begin());
  }

  E expr() {
    E acc = term();
    while (at("+") || at("-")) {
      bool minus = next().text == "-";
      E t = term();
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  E term() {
    E acc = factor();
    while (at("*") || at("/")) {
      const Token& op = next();
      const Token start = peek();
      E f = factor();
      if (op.text == "*") {
        acc = acc * f;
      } else {
        if (f.max_degree() != 0) error(start, "divisor must be a scalar");
        ParamScalar d = f.coefficient(Word());
        if (d.is_zero()) error(start, "division by zero");
        acc = acc.scaled(d.inverse());
      }
    }
    return acc;
  }

  E factor() {
    if (at("-")) {
      next();
      return -factor();
    }
    if (at("+")) {
      next();
      return factor();
    }
    E base = primary();
    if (at("^")) {
      next();
      const Token& t = peek();
      if (t.kind != Tok::integer) error(t, "exponent must be a positive integer");
      next();
      if (t.text.size() > 3 || std::stoul(t.text) == 0) error(t, "exponent must be a positive integer below 1000");
      unsigned e = static_cast<unsigned>(std::stoul(t.text));
      E out = base;
      for (unsigned k = 1; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  E primary() {
    const Token& t = peek();
    if (t.kind == Tok::integer) {
      next();
      return E(ParamScalar(BaseScalar(mpq_class(mpz_class(t.text)))));
    }
    if (t.kind == Tok::ident) {
      next();
      if (t.text == "w") {
        if (!cyclotomic_) error(t, "'w' needs 'base cyclotomic;' declared before use");
        return E(ParamScalar(BaseScalar::omega()));
      }
      auto g = std::find(gens_.begin(), gens_.end(), t.text);
      if (g != gens_.end()) return E::generator(static_cast<std::uint8_t>(g - gens_.begin()));
      if (std::find(params_.begin(), params_.end(), t.text) != params_.end()) {
        return E(ParamScalar::parameter(t.text));
      }
      error(t, "unknown identifier '" + t.text + "'");
    }
    if (at("(")) {
      next();
      E inner = expr();
      expect(")");
      return inner;
    }
    error(t, "expected a number, name or '(', found " + describe(t));
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> gens_;
  std::vector<std::string> params_;
  bool cyclotomic_ = false;
};

}  // namespace presfmt_detail

/// Parses a .alg document; throws ParseError with line and column.
inline Document parse(std::string_view text) { return presfmt_detail::Parser(text).document(); }

/// Parses a document that must contain exactly one algebra block.
inline AlgebraDecl parse_single(std::string_view text) {
  Document d = parse(text);
  if (d.algebras.size() != 1) {
    throw ParseError(1, 1, "expected exactly one algebra block, found " + std::to_string(d.algebras.size()));
  }
  return std::move(d.algebras.front());
}

/// Parses an element of the free algebra on the presentation's generators.
inline Element<ParamScalar> parse_expression(std::string_view text, const Presentation& p) {
  std::vector<std::string> params = p.parameters;
  for (const auto& extra : {"p", "q", "r", "alpha", "beta", "gamma"}) {
    if (std::find(params.begin(), params.end(), extra) == params.end() &&
        std::find(p.generators.begin(), p.generators.end(), extra) == p.generators.end()) {
      params.emplace_back(extra);
    }
  }
  return presfmt_detail::Parser(text, p.generators, params, true).expression();
}

/// Parses a scalar such as "-5/7", "3*w" or "p/q" (parameters p, q, r,
/// alpha, beta, gamma are available).
inline ParamScalar parse_scalar(std::string_view text) {
  Element<ParamScalar> e =
      presfmt_detail::Parser(text, {}, {"p", "q", "r", "alpha", "beta", "gamma"}, true).expression();
  return e.coefficient(Word());
}

inline std::string serialize(const AlgebraDecl& a) {
  const Presentation& p = a.presentation;
  std::string out = "algebra " + p.name + " {\n";
  out += "  base " + to_string(p.base) + ";\n";
  if (!p.parameters.empty()) {
    out += "  params ";
    for (std::size_t i = 0; i < p.parameters.size(); ++i) out += (i ? ", " : "") + p.parameters[i];
    out += ";\n";
  }
  out += "  generators ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) out += (i ? ", " : "") + p.generators[i];
  out += ";\n  relations {\n";
  for (const auto& r : p.relations) out += "    " + r.text + ";\n";
  out += "  }\n";
  if (a.table) {
    out += "  calculus {\n";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      for (std::size_t g = 0; g < p.generators.size(); ++g) {
        out += "    nu[" + p.generators[i] + "]: " + p.generators[g] + " -> " +
               a.table->image(i, static_cast<std::uint8_t>(g)).to_string(p.generators) + ";\n";
      }
    }
    out += "  }\n";
  }
  for (const auto& c : p.constraints) out += "  constraint " + c.text + ";\n";
  return out + "}\n";
}

inline std::string serialize(const Document& d) {
  std::string out;
  for (std::size_t i = 0; i < d.algebras.size(); ++i) out += (i ? "\n" : "") + serialize(d.algebras[i]);
  return out;
}

}  // namespace dsmooth

#endif  // DSMOOTH_PRESFMT_HPP

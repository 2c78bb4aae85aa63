#pragma once

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpcdp/patterns.hpp"
#include "fpcdp/rewriting.hpp"

namespace fpcdp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class Strategy { full, outermost };

struct InputSpec {
  Trs trs;
  Strategy strategy = Strategy::full;
  PatternSet declared_patterns;
  std::vector<std::string> warnings;

  /// Patterns the analysis runs with: the outermost encoding or the declared set.
  PatternSet effective_patterns() const {
    return strategy == Strategy::outermost ? outermost_encode(trs) : declared_patterns;
  }

  friend bool operator==(const InputSpec& a, const InputSpec& b) {
    return a.trs == b.trs && a.strategy == b.strategy && a.declared_patterns == b.declared_patterns;
  }
};

namespace detail {

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_'+*:<>=-").find(c) != std::string_view::npos;
}

struct Token {
  enum class Kind { lparen, rparen, comma, dot, arrow, ident, end } kind;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok{Token::Kind::end, "", line_, column_};
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); tok.kind = Token::Kind::lparen; tok.text = "("; return tok;
      case ')': advance(); tok.kind = Token::Kind::rparen; tok.text = ")"; return tok;
      case ',': advance(); tok.kind = Token::Kind::comma; tok.text = ","; return tok;
      case '.': advance(); tok.kind = Token::Kind::dot; tok.text = "."; return tok;
      default: break;
    }
    if (!is_ident_char(c)) throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
    if (text_.substr(pos_, 2) == "->") {
      advance();
      advance();
      tok.kind = Token::Kind::arrow;
      tok.text = "->";
      return tok;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_]) && text_.substr(pos_, 2) != "->") advance();
    tok.kind = Token::Kind::ident;
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

  /// Skips a COMMENT body up to (and including) its matching parenthesis.
  void skip_balanced() {
    int depth = 1;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      advance();
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) return;
    }
    throw ParseError(line_, column_, "unterminated COMMENT section");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text, std::set<std::string> variables = {},
                  std::map<std::string, std::size_t> arities = {})
      : lexer_(text), variables_(std::move(variables)), arities_(std::move(arities)) {
    shift();
  }

  InputSpec parse_file() {
    InputSpec spec;
    std::vector<Rule> rules;
    struct RawPattern {
      Term term;
      Position position;
      Flag flag;
      Token at;
    };
    std::vector<RawPattern> patterns;
    bool seen_strategy = false;
    if (tok_.kind == Token::Kind::end) error("empty input");
    while (tok_.kind != Token::Kind::end) {
      expect(Token::Kind::lparen, "'('");
      Token keyword = tok_;
      expect(Token::Kind::ident, "section keyword");
      const std::string& k = keyword.text;
      if (k == "VAR") {
        while (tok_.kind == Token::Kind::ident) {
          variables_.insert(tok_.text);
          shift();
        }
      } else if (k == "RULES") {
        while (tok_.kind == Token::Kind::ident) {
          Token at = tok_;
          Term lhs = parse_term(true);
          expect(Token::Kind::arrow, "'->'");
          Term rhs = parse_term(true);
          try {
            rules.emplace_back(lhs, rhs);
          } catch (const std::invalid_argument& e) {
            throw ParseError(at.line, at.column, e.what());
          }
        }
      } else if (k == "STRATEGY") {
        Token value = tok_;
        expect(Token::Kind::ident, "strategy name");
        if (seen_strategy) throw ParseError(keyword.line, keyword.column, "duplicate STRATEGY section");
        seen_strategy = true;
        if (value.text == "OUTERMOST")
          spec.strategy = Strategy::outermost;
        else if (value.text == "FULL")
          spec.strategy = Strategy::full;
        else
          throw ParseError(value.line, value.column, "unsupported strategy " + value.text);
      } else if (k == "FORBIDDEN") {
        while (tok_.kind == Token::Kind::lparen) {
          Token at = tok_;
          shift();
          Term t = parse_term(false);
          expect(Token::Kind::comma, "','");
          Position p = parse_position();
          expect(Token::Kind::comma, "','");
          Token flag = tok_;
          expect(Token::Kind::ident, "flag");
          auto f = parse_flag(flag.text);
          if (!f) throw ParseError(flag.line, flag.column, "flag must be h, b or a, got " + flag.text);
          expect(Token::Kind::rparen, "')'");
          patterns.push_back({t, p, *f, at});
        }
      } else if (k == "COMMENT") {
        lexer_.skip_balanced();
        shift();
        continue;
      } else {
        throw ParseError(keyword.line, keyword.column, "unknown section " + k);
      }
      expect(Token::Kind::rparen, "')'");
    }

    try {
      spec.trs = Trs(std::move(rules));
    } catch (const std::invalid_argument& e) {
      throw ParseError(1, 1, e.what());
    }
    for (const auto& raw : patterns) {
      try {
        if (!spec.declared_patterns.insert(ForbiddenPattern(raw.term, raw.position, raw.flag)))
          spec.warnings.push_back("duplicate forbidden pattern at " + std::to_string(raw.at.line) + ":" +
                                  std::to_string(raw.at.column));
      } catch (const std::invalid_argument& e) {
        throw ParseError(raw.at.line, raw.at.column, e.what());
      }
    }
    if (spec.strategy == Strategy::outermost && !spec.declared_patterns.empty())
      throw ParseError(1, 1, "STRATEGY OUTERMOST cannot be combined with FORBIDDEN patterns");
    for (const auto& name : pattern_only_constants_)
      if (!rule_symbols_.count(name))
        spec.warnings.push_back("identifier " + name +
                                " is not declared in VAR and is read as a constant; declare it to use it as a variable");
    return spec;
  }

  Term parse_term(bool in_rules) {
    Token name = tok_;
    expect(Token::Kind::ident, "term");
    if (tok_.kind != Token::Kind::lparen) {
      if (variables_.count(name.text)) return Term::variable(name.text);
      note_symbol(name, 0, in_rules);
      return Term::apply(Symbol(name.text, 0));
    }
    shift();
    std::vector<Term> args;
    args.push_back(parse_term(in_rules));
    while (tok_.kind == Token::Kind::comma) {
      shift();
      args.push_back(parse_term(in_rules));
    }
    expect(Token::Kind::rparen, "')' or ','");
    if (variables_.count(name.text)) throw ParseError(name.line, name.column, "variable " + name.text + " applied to arguments");
    note_symbol(name, args.size(), in_rules);
    Symbol f(name.text, args.size());
    return Term::apply(std::move(f), std::move(args));
  }

  Position parse_position() {
    Token first = tok_;
    expect(Token::Kind::ident, "position");
    if (first.text == "e") return Position::root();
    std::string text = first.text;
    while (tok_.kind == Token::Kind::dot) {
      shift();
      Token part = tok_;
      expect(Token::Kind::ident, "position index");
      text += "." + part.text;
    }
    auto p = Position::parse(text);
    if (!p) throw ParseError(first.line, first.column, "malformed position " + text);
    return *p;
  }

  bool at_end() const { return tok_.kind == Token::Kind::end; }

 private:
  void shift() { tok_ = lexer_.next(); }

  [[noreturn]] void error(const std::string& what) const { throw ParseError(tok_.line, tok_.column, what); }

  void expect(Token::Kind kind, const std::string& what) {
    if (tok_.kind != kind)
      error("expected " + what + (tok_.kind == Token::Kind::end ? ", got end of input" : ", got '" + tok_.text + "'"));
    shift();
  }

  void note_symbol(const Token& name, std::size_t arity, bool in_rules) {
    auto [it, inserted] = arities_.emplace(name.text, arity);
    if (!inserted && it->second != arity)
      throw ParseError(name.line, name.column,
                       "symbol " + name.text + " used with arity " + std::to_string(arity) + " but earlier with " +
                           std::to_string(it->second));
    if (in_rules)
      rule_symbols_.insert(name.text);
    else if (arity == 0)
      pattern_only_constants_.insert(name.text);
  }

  Lexer lexer_;
  Token tok_{Token::Kind::end, "", 1, 1};
  std::set<std::string> variables_;
  std::map<std::string, std::size_t> arities_;
  std::set<std::string> rule_symbols_;
  std::set<std::string> pattern_only_constants_;
};

}  // namespace detail

/// Parses the TPDB-style format with the FORBIDDEN extension.
inline InputSpec parse(std::string_view text) { return detail::Parser(text).parse_file(); }

/// Parses a standalone term; identifiers in `variables` are variables, and
/// symbols of `signature` keep their arity.
inline Term parse_term(std::string_view text, const std::set<std::string>& variables = {},
                       const std::set<Symbol>& signature = {}) {
  std::map<std::string, std::size_t> arities;
  for (const auto& f : signature) arities.emplace(f.name, f.arity);
  detail::Parser parser(text, variables, std::move(arities));
  Term t = parser.parse_term(true);
  if (!parser.at_end()) throw ParseError(1, 1, "trailing input after term");
  return t;
}

inline std::string print(const InputSpec& spec) {
  std::set<std::string> vars;
  for (const auto& r : spec.trs.rules())
    for (const auto& v : variables(r.lhs())) vars.insert(v);
  for (const auto& pi : spec.declared_patterns)
    for (const auto& v : variables(pi.term())) vars.insert(v);
  std::string out;
  if (!vars.empty()) {
    out += "(VAR";
    for (const auto& v : vars) out += " " + v;
    out += ")\n";
  }
  out += "(RULES\n";
  for (const auto& r : spec.trs.rules()) out += "  " + to_string(r) + "\n";
  out += ")\n";
  if (spec.strategy == Strategy::outermost) out += "(STRATEGY OUTERMOST)\n";
  if (!spec.declared_patterns.empty()) {
    out += "(FORBIDDEN\n";
    for (const auto& pi : spec.declared_patterns) out += "  " + to_string(pi) + "\n";
    out += ")\n";
  }
  return out;
}

}  // namespace fpcdp

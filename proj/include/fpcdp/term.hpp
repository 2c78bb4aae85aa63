#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpcdp {

enum class SymbolKind { plain, marked, token, hole };

/// A function symbol. Marked symbols are named `f#` after their plain
/// counterpart; the token and the hole are reserved auxiliary symbols.
struct Symbol {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::plain;

  Symbol() = default;
  Symbol(std::string n, std::size_t a, SymbolKind k = SymbolKind::plain)
      : name(std::move(n)), arity(a), kind(k) {
    if (kind == SymbolKind::hole && arity != 0)
      throw std::invalid_argument("hole symbol must be nullary");
    if (kind == SymbolKind::token && arity != 1)
      throw std::invalid_argument("token symbol must be unary");
  }

  static Symbol marked_of(const Symbol& plain) {
    if (plain.kind != SymbolKind::plain)
      throw std::invalid_argument("only plain symbols can be marked: " + plain.name);
    return Symbol(plain.name + "#", plain.arity, SymbolKind::marked);
  }

  bool is_plain() const { return kind == SymbolKind::plain; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

inline const Symbol& hole_symbol() {
  static const Symbol hole("□", 0, SymbolKind::hole);
  return hole;
}

/// A path from the root of a term; indices are 1-based, the empty path is the root.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<std::size_t> path) : path_(std::move(path)) { check(); }
  Position(std::initializer_list<std::size_t> path) : path_(path) { check(); }

  static Position root() { return {}; }

  bool is_root() const { return path_.empty(); }
  std::size_t depth() const { return path_.size(); }
  const std::vector<std::size_t>& path() const { return path_; }
  std::size_t operator[](std::size_t i) const { return path_[i]; }

  Position child(std::size_t index) const {
    Position p = *this;
    p.path_.push_back(index);
    p.check();
    return p;
  }

  Position concat(const Position& suffix) const {
    Position p = *this;
    p.path_.insert(p.path_.end(), suffix.path_.begin(), suffix.path_.end());
    return p;
  }

  /// Strips the last index; the root has no parent.
  Position parent() const {
    if (path_.empty()) throw std::logic_error("root position has no parent");
    return Position(std::vector<std::size_t>(path_.begin(), path_.end() - 1));
  }

  // p <= q
  bool is_prefix_of(const Position& other) const {
    return path_.size() <= other.path_.size() &&
           std::equal(path_.begin(), path_.end(), other.path_.begin());
  }
  // p < q
  bool is_strict_prefix_of(const Position& other) const {
    return path_.size() < other.path_.size() && is_prefix_of(other);
  }
  bool is_above(const Position& other) const { return is_strict_prefix_of(other); }
  bool is_below(const Position& other) const { return other.is_strict_prefix_of(*this); }
  bool is_parallel_to(const Position& other) const {
    return !is_prefix_of(other) && !other.is_prefix_of(*this);
  }

  /// For p = prefix.q returns q.
  std::optional<Position> strip_prefix(const Position& prefix) const {
    if (!prefix.is_prefix_of(*this)) return std::nullopt;
    return Position(std::vector<std::size_t>(path_.begin() + static_cast<std::ptrdiff_t>(prefix.depth()),
                                             path_.end()));
  }

  std::string to_string() const {
    if (path_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(path_[i]);
    }
    return out;
  }

  /// Accepts "e" for the root or dot-separated positive integers.
  static std::optional<Position> parse(std::string_view text) {
    if (text == "e") return Position();
    std::vector<std::size_t> path;
    std::size_t value = 0;
    bool digits = false;
    for (char c : text) {
      if (c >= '0' && c <= '9') {
        value = value * 10 + static_cast<std::size_t>(c - '0');
        digits = true;
      } else if (c == '.' && digits) {
        if (value == 0) return std::nullopt;
        path.push_back(value);
        value = 0;
        digits = false;
      } else {
        return std::nullopt;
      }
    }
    if (!digits || value == 0) return std::nullopt;
    path.push_back(value);
    return Position(std::move(path));
  }

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  void check() const {
    for (auto i : path_)
      if (i == 0) throw std::invalid_argument("positions are 1-based");
  }

  std::vector<std::size_t> path_;
};

inline std::ostream& operator<<(std::ostream& os, const Position& p) { return os << p.to_string(); }

/// Immutable first-order term with structural sharing. Either a variable or
/// a symbol applied to exactly `arity` arguments.
class Term {
 public:
  Term() : Term(variable("_")) {}

  static Term variable(std::string name) {
    auto node = std::make_shared<Node>();
    node->is_var = true;
    node->var_name = std::move(name);
    node->size = 1;
    node->depth = 1;
    node->hash = std::hash<std::string>{}(node->var_name) * 31 + 7;
    return Term(std::move(node));
  }

  static Term apply(Symbol symbol, std::vector<Term> args = {}) {
    if (args.size() != symbol.arity)
      throw std::invalid_argument("symbol " + symbol.name + " expects " + std::to_string(symbol.arity) +
                                  " arguments, got " + std::to_string(args.size()));
    auto node = std::make_shared<Node>();
    node->is_var = false;
    std::size_t h = std::hash<std::string>{}(symbol.name) ^ (static_cast<std::size_t>(symbol.kind) << 3);
    std::size_t size = 1, depth = 0;
    for (const auto& a : args) {
      h = h * 1000003u ^ a.hash();
      size += a.size();
      depth = std::max(depth, a.depth());
    }
    node->symbol = std::move(symbol);
    node->args = std::move(args);
    node->size = size;
    node->depth = depth + 1;
    node->hash = h;
    return Term(std::move(node));
  }

  static Term hole() { return apply(hole_symbol()); }

  bool is_variable() const { return node_->is_var; }
  bool is_hole() const { return !node_->is_var && node_->symbol.kind == SymbolKind::hole; }

  const std::string& var_name() const {
    if (!is_variable()) throw std::logic_error("not a variable");
    return node_->var_name;
  }
  const Symbol& symbol() const {
    if (is_variable()) throw std::logic_error("variable " + node_->var_name + " has no root symbol");
    return node_->symbol;
  }
  std::span<const Term> args() const { return node_->args; }
  /// 1-based argument access, matching position indices.
  const Term& arg(std::size_t index) const {
    if (index == 0 || index > node_->args.size()) throw std::out_of_range("argument index out of range");
    return node_->args[index - 1];
  }

  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    if (a.node_->is_var != b.node_->is_var) return false;
    if (a.node_->is_var) return a.node_->var_name == b.node_->var_name;
    return a.node_->symbol == b.node_->symbol && a.node_->args == b.node_->args;
  }

  /// Total structural order: variables before applications, then by name/symbol, then arguments.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.node_->is_var != b.node_->is_var)
      return a.node_->is_var ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.node_->is_var) return a.node_->var_name <=> b.node_->var_name;
    if (auto c = a.node_->symbol <=> b.node_->symbol; c != 0) return c;
    return std::lexicographical_compare_three_way(a.node_->args.begin(), a.node_->args.end(),
                                                  b.node_->args.begin(), b.node_->args.end());
  }

 private:
  struct Node {
    bool is_var = false;
    std::string var_name;
    Symbol symbol;
    std::vector<Term> args;
    std::size_t size = 0;
    std::size_t depth = 0;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// ---------------------------------------------------------------------------
// Structural queries

inline void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  if (t.is_variable()) return;
  auto args = t.args();
  for (std::size_t i = 0; i < args.size(); ++i) {
    Position next = cur.child(i + 1);
    collect_positions(args[i], next, out);
  }
}

/// All positions of t in lexicographic (pre-order) order.
inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  out.reserve(t.size());
  Position root;
  collect_positions(t, root, out);
  return out;
}

namespace detail {
template <class F>
void visit_positions(const Term& t, Position& cur, F& visit) {
  visit(cur, t);
  if (t.is_variable()) return;
  auto args = t.args();
  for (std::size_t i = 0; i < args.size(); ++i) {
    Position next = cur.child(i + 1);
    visit_positions(args[i], next, visit);
  }
}
}  // namespace detail

/// Calls visit(position, subterm) in pre-order.
template <class F>
void for_each_position(const Term& t, F&& visit) {
  Position root;
  detail::visit_positions(t, root, visit);
}

/// Positions carrying a function symbol (Pos_F).
inline std::vector<Position> function_positions(const Term& t) {
  std::vector<Position> out;
  for_each_position(t, [&](const Position& p, const Term& s) {
    if (!s.is_variable()) out.push_back(p);
  });
  return out;
}

inline std::vector<Position> variable_positions(const Term& t) {
  std::vector<Position> out;
  for_each_position(t, [&](const Position& p, const Term& s) {
    if (s.is_variable()) out.push_back(p);
  });
  return out;
}

inline bool has_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p.path()) {
    if (cur->is_variable() || i > cur->args().size()) return false;
    cur = &cur->arg(i);
  }
  return true;
}

inline const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p.path()) {
    if (cur->is_variable() || i > cur->args().size())
      throw std::out_of_range("position " + p.to_string() + " is not a position of the term");
    cur = &cur->arg(i);
  }
  return *cur;
}

namespace detail {
inline Term replace_from(const Term& t, const std::vector<std::size_t>& path, std::size_t at, const Term& u) {
  if (at == path.size()) return u;
  if (t.is_variable() || path[at] > t.args().size())
    throw std::out_of_range("position is not a position of the term");
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path[at] - 1] = replace_from(args[path[at] - 1], path, at + 1, u);
  return Term::apply(t.symbol(), std::move(args));
}
}  // namespace detail

/// t[u]_p
inline Term replace_at(const Term& t, const Position& p, const Term& u) {
  return detail::replace_from(t, p.path(), 0, u);
}

template <class F>
void for_each_subterm(const Term& t, F&& visit) {
  visit(t);
  if (!t.is_variable())
    for (const auto& a : t.args()) for_each_subterm(a, visit);
}

inline std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is_variable()) out.insert(s.var_name());
  });
  return out;
}

/// Variables in order of first (left-to-right) occurrence.
inline std::vector<std::string> variables_in_order(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is_variable() && seen.insert(s.var_name()).second) out.push_back(s.var_name());
  });
  return out;
}

inline bool is_linear(const Term& t) {
  std::set<std::string> seen;
  bool linear = true;
  for_each_subterm(t, [&](const Term& s) {
    if (s.is_variable() && !seen.insert(s.var_name()).second) linear = false;
  });
  return linear;
}

inline bool is_ground(const Term& t) { return variables(t).empty(); }

inline std::set<Symbol> symbols(const Term& t) {
  std::set<Symbol> out;
  for_each_subterm(t, [&](const Term& s) {
    if (!s.is_variable()) out.insert(s.symbol());
  });
  return out;
}

inline std::size_t count_holes(const Term& t) {
  std::size_t n = 0;
  for_each_subterm(t, [&](const Term& s) { n += s.is_hole() ? 1 : 0; });
  return n;
}

inline std::optional<Position> hole_position(const Term& context) {
  std::optional<Position> found;
  for_each_position(context, [&](const Position& p, const Term& s) {
    if (!found && s.is_hole()) found = p;
  });
  return found;
}

/// Renames variables through `rename`; structure is otherwise untouched.
template <class F>
Term rename_variables(const Term& t, F&& rename) {
  if (t.is_variable()) return Term::variable(rename(t.var_name()));
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_variables(a, rename));
  return Term::apply(t.symbol(), std::move(args));
}

/// Rebuilds t with each symbol passed through `map` (arity must be preserved).
template <class F>
Term map_symbols(const Term& t, F&& map) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(map_symbols(a, map));
  return Term::apply(map(t.symbol()), std::move(args));
}

// ---------------------------------------------------------------------------
// Printing

inline void print_term(std::ostream& os, const Term& t) {
  if (t.is_variable()) {
    os << t.var_name();
    return;
  }
  os << t.symbol().name;
  auto args = t.args();
  if (args.empty()) return;
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    print_term(os, args[i]);
  }
  os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  print_term(os, t);
  return os;
}

inline std::string to_string(const Term& t) {
  std::string out;
  struct Writer {
    std::string& out;
    void operator()(const Term& t) {
      if (t.is_variable()) {
        out += t.var_name();
        return;
      }
      out += t.symbol().name;
      auto args = t.args();
      if (args.empty()) return;
      out += '(';
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        (*this)(args[i]);
      }
      out += ')';
    }
  };
  Writer{out}(t);
  return out;
}

// ---------------------------------------------------------------------------
// Convenience builders, mostly for tests and fixtures.

inline Term var(std::string name) { return Term::variable(std::move(name)); }

inline Term app(const std::string& name, std::vector<Term> args = {}) {
  Symbol f(name, args.size());
  return Term::apply(std::move(f), std::move(args));
}

}  // namespace fpcdp

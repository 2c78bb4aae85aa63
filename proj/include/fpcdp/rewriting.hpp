#pragma once

#include <concepts>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcdp/substitution.hpp"
#include "fpcdp/term.hpp"

namespace fpcdp {

/// A rewrite rule l -> r; l is not a variable and Var(r) ⊆ Var(l).
class Rule {
 public:
  Rule(Term lhs, Term rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
    if (lhs_.is_variable()) throw std::invalid_argument("rule lhs must not be a variable: " + to_string(lhs_));
    auto lv = variables(lhs_);
    for (const auto& v : variables(rhs_))
      if (!lv.count(v))
        throw std::invalid_argument("variable " + v + " of rhs does not occur in lhs of " + to_string(lhs_) +
                                    " -> " + to_string(rhs_));
  }

  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }

  friend bool operator==(const Rule&, const Rule&) = default;

 private:
  Term lhs_;
  Term rhs_;
};

inline std::string to_string(const Rule& r) { return to_string(r.lhs()) + " -> " + to_string(r.rhs()); }

template <class F>
Rule rename_variables(const Rule& r, F&& rename) {
  return Rule(rename_variables(r.lhs(), rename), rename_variables(r.rhs(), rename));
}

/// A term rewriting system: ordered rules over a signature partitioned into
/// defined symbols (roots of left-hand sides) and constructors.
class Trs {
 public:
  Trs() = default;
  explicit Trs(std::vector<Rule> rules, const std::set<Symbol>& extra_symbols = {}) : rules_(std::move(rules)) {
    for (const auto& r : rules_) {
      defined_.insert(r.lhs().symbol());
      for (const auto& f : symbols(r.lhs())) add_symbol(f);
      for (const auto& f : symbols(r.rhs())) add_symbol(f);
    }
    for (const auto& f : extra_symbols) add_symbol(f);
  }

  const std::vector<Rule>& rules() const { return rules_; }
  const std::set<Symbol>& signature() const { return signature_; }
  const std::set<Symbol>& defined() const { return defined_; }
  std::set<Symbol> constructors() const {
    std::set<Symbol> out;
    for (const auto& f : signature_)
      if (!defined_.count(f)) out.insert(f);
    return out;
  }
  bool is_defined(const Symbol& f) const { return defined_.count(f) != 0; }
  bool empty() const { return rules_.empty(); }

  friend bool operator==(const Trs& a, const Trs& b) {
    return a.rules_ == b.rules_ && a.signature_ == b.signature_;
  }

 private:
  void add_symbol(const Symbol& f) {
    if (!f.is_plain()) throw std::invalid_argument("TRS signature may only contain plain symbols: " + f.name);
    for (const auto& g : signature_)
      if (g.name == f.name && g.arity != f.arity)
        throw std::invalid_argument("symbol " + f.name + " used with arities " + std::to_string(g.arity) +
                                    " and " + std::to_string(f.arity));
    signature_.insert(f);
  }

  std::vector<Rule> rules_;
  std::set<Symbol> signature_;
  std::set<Symbol> defined_;
};

// ---------------------------------------------------------------------------
// Variable renaming

template <class T>
concept VariableCarrying = requires(const T& value, std::string (*rename)(const std::string&)) {
  { rename_variables(value, rename) } -> std::convertible_to<T>;
};

/// Renames every variable v of item number i (1-based) to v_i. Deterministic,
/// and the results are pairwise variable-disjoint.
template <VariableCarrying T>
std::vector<T> rename_apart(const std::vector<T>& items) {
  std::vector<T> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string suffix = "_" + std::to_string(i + 1);
    out.push_back(rename_variables(items[i], [&](const std::string& v) { return v + suffix; }));
  }
  return out;
}

/// Renames the variables of `item` so that none of them is in `avoid`.
template <VariableCarrying T>
T rename_away_from(const T& item, const std::set<std::string>& avoid) {
  return rename_variables(item, [&](const std::string& v) {
    std::string name = v;
    while (avoid.count(name)) name += '\'';
    return name;
  });
}

/// Generates variable names not occurring in a given set.
class FreshVariables {
 public:
  explicit FreshVariables(std::set<std::string> avoid = {}, std::string prefix = "v")
      : avoid_(std::move(avoid)), prefix_(std::move(prefix)) {}

  std::string next() {
    for (;;) {
      std::string name = prefix_ + std::to_string(++counter_);
      if (avoid_.insert(name).second) return name;
    }
  }
  Term next_term() { return Term::variable(next()); }
  void avoid(const std::set<std::string>& names) { avoid_.insert(names.begin(), names.end()); }

 private:
  std::set<std::string> avoid_;
  std::string prefix_;
  std::size_t counter_ = 0;
};

/// Renames variables to x1, x2, ... in order of first occurrence across `terms`.
inline std::map<std::string, std::string> canonical_variable_names(const std::vector<Term>& terms) {
  std::map<std::string, std::string> names;
  for (const auto& t : terms)
    for (const auto& v : variables_in_order(t))
      if (!names.count(v)) names.emplace(v, "x" + std::to_string(names.size() + 1));
  return names;
}

inline Term canonical_variant(const Term& t) {
  auto names = canonical_variable_names({t});
  return rename_variables(t, [&](const std::string& v) { return names.at(v); });
}

inline bool is_variant(const Term& a, const Term& b) { return canonical_variant(a) == canonical_variant(b); }

/// Replaces each variable occurrence by a distinct fresh variable.
inline Term linearize(const Term& t, FreshVariables& fresh) {
  if (t.is_variable()) return fresh.next_term();
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(linearize(a, fresh));
  return Term::apply(t.symbol(), std::move(args));
}

// ---------------------------------------------------------------------------
// Overlaps and plain rewriting

/// True iff p is a non-variable position of t and the (renamed-apart) lhs of
/// the rule unifies with t|_p.
inline bool overlaps(const Rule& rule, const Term& t, const Position& p) {
  if (!has_position(t, p)) return false;
  const Term& sub = subterm_at(t, p);
  if (sub.is_variable()) return false;
  Rule fresh = rename_away_from(rule, variables(t));
  return unifiable(fresh.lhs(), sub);
}

inline bool overlaps_any(const Trs& trs, const Term& t, const Position& p) {
  for (const auto& r : trs.rules())
    if (overlaps(r, t, p)) return true;
  return false;
}

/// Contracts the redex at p with the given rule, if it matches.
inline std::optional<Term> rewrite_with(const Rule& rule, const Term& t, const Position& p) {
  const Term& sub = subterm_at(t, p);
  auto sigma = match(rule.lhs(), sub);
  if (!sigma) return std::nullopt;
  return replace_at(t, p, sigma->apply(rule.rhs()));
}

/// All one-step results of rewriting t at p, one per applicable rule, in rule order.
inline std::vector<Term> rewrite_step(const Trs& trs, const Term& t, const Position& p) {
  std::vector<Term> out;
  if (subterm_at(t, p).is_variable()) return out;
  for (const auto& r : trs.rules())
    if (auto u = rewrite_with(r, t, p)) out.push_back(*u);
  return out;
}

inline bool is_redex(const Trs& trs, const Term& t) {
  if (t.is_variable()) return false;
  for (const auto& r : trs.rules())
    if (matches(r.lhs(), t)) return true;
  return false;
}

}  // namespace fpcdp

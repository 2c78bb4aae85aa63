#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fpcdp/patterns.hpp"
#include "fpcdp/rewriting.hpp"

namespace fpcdp {

/// Where a contextual dependency pair came from. DPc, Vc, Ac and Sc are the
/// dependency, variable-descent, activation and shift pairs.
enum class Origin { dpc, vc, ac, sc, user };

inline const char* origin_name(Origin o) {
  switch (o) {
    case Origin::dpc: return "DPc";
    case Origin::vc: return "Vc";
    case Origin::ac: return "Ac";
    case Origin::sc: return "Sc";
    case Origin::user: return "user";
  }
  return "?";
}

/// A rewrite pair with an attached one-hole calling context: lhs -> rhs [context].
class ContextualRule {
 public:
  ContextualRule(Term lhs, Term rhs, Term context, Origin origin = Origin::user)
      : lhs_(std::move(lhs)), rhs_(std::move(rhs)), context_(std::move(context)), origin_(origin) {
    if (count_holes(context_) != 1)
      throw std::invalid_argument("context must contain exactly one hole: " + to_string(context_));
    hole_ = *fpcdp::hole_position(context_);
    auto lv = variables(lhs_);
    for (const auto* t : {&rhs_, &context_})
      for (const auto& v : variables(*t))
        if (!lv.count(v)) throw std::invalid_argument("variable " + v + " does not occur in pair lhs " + to_string(lhs_));
  }

  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  const Term& context() const { return context_; }
  const Position& hole_position() const { return hole_; }
  Origin origin() const { return origin_; }

  /// Structural pairs (Vc, Ac, Sc) move the token through terms.
  bool is_structural() const { return origin_ == Origin::vc || origin_ == Origin::ac || origin_ == Origin::sc; }

  /// Syntactic identity of the triple; the origin tag is bookkeeping.
  friend bool operator==(const ContextualRule& a, const ContextualRule& b) {
    return a.lhs_ == b.lhs_ && a.rhs_ == b.rhs_ && a.context_ == b.context_;
  }

 private:
  Term lhs_;
  Term rhs_;
  Term context_;
  Position hole_;
  Origin origin_;
};

inline std::string to_string(const ContextualRule& p) {
  return to_string(p.lhs()) + " -> " + to_string(p.rhs()) + " [" + to_string(p.context()) + "]";
}

template <class F>
ContextualRule rename_variables(const ContextualRule& p, F&& rename) {
  return ContextualRule(rename_variables(p.lhs(), rename), rename_variables(p.rhs(), rename),
                        rename_variables(p.context(), rename), p.origin());
}

/// Variables renamed to x1, x2, ... in order of occurrence across lhs, rhs, context.
inline ContextualRule canonical_variant(const ContextualRule& p) {
  auto names = canonical_variable_names({p.lhs(), p.rhs(), p.context()});
  return rename_variables(p, [&](const std::string& v) { return names.at(v); });
}

inline bool is_variant(const ContextualRule& a, const ContextualRule& b) {
  return canonical_variant(a) == canonical_variant(b);
}

/// Bijection between plain symbols and their marked versions.
class Marking {
 public:
  const Symbol& mark(const Symbol& plain) {
    auto it = to_marked_.find(plain);
    if (it == to_marked_.end()) {
      Symbol m = Symbol::marked_of(plain);
      to_plain_.emplace(m, plain);
      it = to_marked_.emplace(plain, std::move(m)).first;
    }
    return it->second;
  }

  std::optional<Symbol> marked(const Symbol& plain) const {
    auto it = to_marked_.find(plain);
    if (it == to_marked_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Symbol> plain(const Symbol& marked) const {
    auto it = to_plain_.find(marked);
    if (it == to_plain_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return to_marked_.size(); }
  const std::map<Symbol, Symbol>& entries() const { return to_marked_; }

 private:
  std::map<Symbol, Symbol> to_marked_;
  std::map<Symbol, Symbol> to_plain_;
};

/// Token symbol named T, primed until it differs from every name in the signature.
inline Symbol choose_token(const Trs& trs) {
  std::string name = "T";
  auto taken = [&](const std::string& n) {
    return std::any_of(trs.signature().begin(), trs.signature().end(), [&](const Symbol& f) { return f.name == n; });
  };
  while (taken(name)) name += '\'';
  return Symbol(name, 1, SymbolKind::token);
}

/// A CDP problem (pairs, rules, patterns, token) together with the marking.
struct CdpProblem {
  std::vector<ContextualRule> pairs;
  Trs rules;
  PatternSet patterns;
  Symbol token;
  Marking marking;

  CdpProblem with_pairs(std::vector<ContextualRule> subset) const {
    CdpProblem out = *this;
    out.pairs = std::move(subset);
    return out;
  }

  std::optional<std::size_t> index_of(const ContextualRule& pair) const {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i] == pair) return i;
    return std::nullopt;
  }
};

/// Checks the shape conditions of a CDP problem: the token occurs only at the
/// root of pair sides, marked symbols only at roots, no a-patterns, contexts
/// free of token and marked symbols. Returns a diagnostic or nullopt.
inline std::optional<std::string> check_problem(const CdpProblem& problem) {
  if (problem.patterns.has_flag(Flag::above)) return "a-patterns are not supported by the CDP analysis";
  auto only_plain_below_root = [&](const Term& t) {
    if (t.is_variable()) return true;
    for (const auto& a : t.args())
      for (const auto& f : symbols(a))
        if (!f.is_plain()) return false;
    return true;
  };
  for (const auto& p : problem.pairs) {
    for (const auto* side : {&p.lhs(), &p.rhs()}) {
      if (!only_plain_below_root(*side)) return "non-plain symbol below the root of pair " + to_string(p);
      if (!side->is_variable() && side->symbol().kind == SymbolKind::token) {
        if (!(side->symbol() == problem.token)) return "unknown token in pair " + to_string(p);
        continue;
      }
      if (!side->is_variable() && side->symbol().kind == SymbolKind::marked &&
          !problem.marking.plain(side->symbol()))
        return "unknown marked symbol in pair " + to_string(p);
    }
    for (const auto& f : symbols(p.context()))
      if (f.kind == SymbolKind::token || f.kind == SymbolKind::marked)
        return "context of pair " + to_string(p) + " contains an auxiliary symbol";
  }
  return std::nullopt;
}

/// Replaces marked symbols by their plain versions and every T(s) by s.
inline Term erase(const Term& t, const Marking& marking, const Symbol& token) {
  if (t.is_variable()) return t;
  const Symbol& f = t.symbol();
  if (f == token) return erase(t.arg(1), marking, token);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(erase(a, marking, token));
  if (f.kind == SymbolKind::marked) {
    auto plain = marking.plain(f);
    if (!plain) throw std::invalid_argument("unknown marked symbol " + f.name);
    return Term::apply(*plain, std::move(args));
  }
  if (f.kind == SymbolKind::token) throw std::invalid_argument("unknown token symbol " + f.name);
  return Term::apply(f, std::move(args));
}

inline Term erase(const Term& t, const CdpProblem& problem) { return erase(t, problem.marking, problem.token); }

/// Position in erase(t) corresponding to q in t (token levels are dropped).
inline Position erase_position(const Term& t, const Position& q, const Symbol& token) {
  std::vector<std::size_t> out;
  const Term* cur = &t;
  for (auto i : q.path()) {
    if (!cur->is_variable() && cur->symbol() == token) {
      cur = &cur->arg(i);
      continue;
    }
    out.push_back(i);
    cur = &cur->arg(i);
  }
  return Position(std::move(out));
}

enum class CdpMode { strict, compat };

namespace detail {
inline Term mark_root(const Term& t, Marking& marking) {
  std::vector<Term> args(t.args().begin(), t.args().end());
  return Term::apply(marking.mark(t.symbol()), std::move(args));
}

inline Term generic_application(const Symbol& f) {
  std::vector<Term> args;
  for (std::size_t i = 1; i <= f.arity; ++i) args.push_back(Term::variable("x" + std::to_string(i)));
  return Term::apply(f, std::move(args));
}
}  // namespace detail

/// Builds CDP(R) for the given patterns: DP_c ∪ V_c ∪ A_c ∪ S_c.
///
/// strict: DP_c keeps only defined positions of r allowed w.r.t. the stable
/// patterns, and A_c only covers defined symbols. compat drops both
/// restrictions, which over-approximates the strict set.
inline CdpProblem build_cdps(const Trs& trs, const PatternSet& patterns, CdpMode mode = CdpMode::strict) {
  if (patterns.has_flag(Flag::above)) throw std::invalid_argument("a-patterns are not supported by the CDP analysis");
  CdpProblem problem;
  problem.rules = trs;
  problem.patterns = patterns;
  problem.token = choose_token(trs);

  std::vector<ContextualRule> pairs;
  std::vector<ContextualRule> keys;
  auto add = [&](ContextualRule p) {
    auto key = canonical_variant(p);
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) return;
    keys.push_back(std::move(key));
    pairs.push_back(std::move(p));
  };
  auto token_of = [&](Term t) { return Term::apply(problem.token, {std::move(t)}); };

  const PatternSet stable = stb(patterns, trs);
  for (const auto& rule : trs.rules()) {
    const Term& r = rule.rhs();
    std::vector<Position> allowed = mode == CdpMode::strict ? allowed_positions(stable, r) : positions(r);
    for (const auto& p : positions(r)) {
      const Term& sub = subterm_at(r, p);
      if (sub.is_variable() || !trs.is_defined(sub.symbol())) continue;
      if (!std::binary_search(allowed.begin(), allowed.end(), p)) continue;
      add(ContextualRule(detail::mark_root(rule.lhs(), problem.marking), detail::mark_root(sub, problem.marking),
                         replace_at(r, p, Term::hole()), Origin::dpc));
    }
  }
  for (const auto& rule : trs.rules()) {
    const Term& r = rule.rhs();
    for (const auto& p : variable_positions(r))
      add(ContextualRule(detail::mark_root(rule.lhs(), problem.marking), token_of(subterm_at(r, p)),
                         replace_at(r, p, Term::hole()), Origin::vc));
  }

  std::vector<Symbol> rhs_symbols;  // first occurrence order
  for (const auto& rule : trs.rules())
    for_each_subterm(rule.rhs(), [&](const Term& s) {
      if (!s.is_variable() && std::find(rhs_symbols.begin(), rhs_symbols.end(), s.symbol()) == rhs_symbols.end())
        rhs_symbols.push_back(s.symbol());
    });

  for (const auto& f : rhs_symbols) {
    if (mode == CdpMode::strict && !trs.is_defined(f)) continue;
    Term generic = detail::generic_application(f);
    add(ContextualRule(token_of(generic), detail::mark_root(generic, problem.marking), Term::hole(), Origin::ac));
  }
  for (const auto& f : rhs_symbols) {
    Term generic = detail::generic_application(f);
    for (std::size_t i = 1; i <= f.arity; ++i)
      add(ContextualRule(token_of(generic), token_of(generic.arg(i)),
                         replace_at(generic, Position{i}, Term::hole()), Origin::sc));
  }
  problem.pairs = std::move(pairs);
  return problem;
}

/// Result of plugging the contexts of a pair sequence into each other.
struct NestedContext {
  Term context;       // c1[c2[... cn ...]] with the hole of cn still open
  Term term;          // the same with erase(rhs of the last pair) in the hole
  Position position;  // p1.p2. ... .pn
};

/// Renames the pairs apart (pair i gets suffix _i) and nests their contexts.
inline NestedContext nested_context(const std::vector<ContextualRule>& walk, const CdpProblem& problem) {
  if (walk.empty()) throw std::invalid_argument("nested_context needs at least one pair");
  auto renamed = rename_apart(walk);
  Term context = Term::hole();
  Position position;
  for (const auto& p : renamed) {
    context = replace_at(context, position, p.context());
    position = position.concat(p.hole_position());
  }
  Term term = replace_at(context, position, erase(renamed.back().rhs(), problem));
  return {std::move(context), std::move(term), std::move(position)};
}

// ---------------------------------------------------------------------------
// Chains (test oracle; the prover never builds chains)

struct PlainStep {
  Position position;
  std::size_t rule = 0;
};

/// One pair application followed by plain rewrite steps not above the tracked position.
struct ChainStep {
  ContextualRule pair;
  Substitution substitution;
  std::vector<PlainStep> interlude;
};

struct ChainEvent {
  enum class Kind { pair, plain } kind;
  Origin origin = Origin::user;  // for pair events
  Term before;
  Term after;
  Position position;
};

struct ChainReplay {
  bool valid = false;
  std::string failure;
  std::vector<ChainEvent> events;
  Term final_term;
  Position tracked;
};

/// Replays the reduction displayed by a CDP chain: each pair is applied at the
/// tracked position, followed by plain R-steps not above it (none after a
/// token-rooted rhs), and every step must be allowed on the erased term.
/// Throws std::invalid_argument on malformed step data.
inline ChainReplay replay_chain(const CdpProblem& problem, const std::vector<ChainStep>& steps) {
  ChainReplay out;
  if (steps.empty()) {
    out.valid = true;
    return out;
  }
  auto fail = [&](std::string why) {
    out.valid = false;
    out.failure = std::move(why);
    return out;
  };
  Term cur = steps.front().substitution.apply(steps.front().pair.lhs());
  Position tracked;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    if (!problem.index_of(step.pair)) return fail("pair " + to_string(step.pair) + " is not in the problem");
    const Term expected = step.substitution.apply(step.pair.lhs());
    if (!(subterm_at(cur, tracked) == expected))
      return fail("step " + std::to_string(i + 1) + ": " + to_string(subterm_at(cur, tracked)) + " is not " +
                  to_string(expected));
    Term erased = erase(cur, problem);
    if (!is_allowed(problem.patterns, erased, erase_position(cur, tracked, problem.token)))
      return fail("step " + std::to_string(i + 1) + ": pair application at forbidden position " + tracked.to_string());
    Term contracted = replace_at(step.substitution.apply(step.pair.context()), step.pair.hole_position(),
                                 step.substitution.apply(step.pair.rhs()));
    Term next = replace_at(cur, tracked, contracted);
    out.events.push_back({ChainEvent::Kind::pair, step.pair.origin(), cur, next, tracked});
    cur = std::move(next);
    tracked = tracked.concat(step.pair.hole_position());

    const Term& rhs = step.pair.rhs();
    bool token_rooted = !rhs.is_variable() && rhs.symbol() == problem.token;
    if (token_rooted && !step.interlude.empty())
      return fail("step " + std::to_string(i + 1) + ": plain steps after a token-rooted right-hand side");
    for (const auto& plain : step.interlude) {
      if (plain.rule >= problem.rules.rules().size()) throw std::invalid_argument("rule index out of range");
      if (!has_position(cur, plain.position))
        throw std::invalid_argument("position " + plain.position.to_string() + " not in " + to_string(cur));
      if (plain.position.is_prefix_of(tracked))
        return fail("plain step at " + plain.position.to_string() + " is not below or parallel to " +
                    tracked.to_string());
      Term erased_now = erase(cur, problem);
      if (!is_allowed(problem.patterns, erased_now, erase_position(cur, plain.position, problem.token)))
        return fail("plain step at forbidden position " + plain.position.to_string());
      auto result = rewrite_with(problem.rules.rules()[plain.rule], cur, plain.position);
      if (!result) return fail("rule " + std::to_string(plain.rule) + " does not apply at " + plain.position.to_string());
      out.events.push_back({ChainEvent::Kind::plain, Origin::user, cur, *result, plain.position});
      cur = std::move(*result);
    }
  }
  out.valid = true;
  out.final_term = cur;
  out.tracked = tracked;
  return out;
}

inline bool validate_chain(const CdpProblem& problem, const std::vector<ChainStep>& steps) {
  return replay_chain(problem, steps).valid;
}

}  // namespace fpcdp

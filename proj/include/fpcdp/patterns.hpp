#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcdp/rewriting.hpp"
#include "fpcdp/term.hpp"

namespace fpcdp {

/// h forbids the anchor position itself, b everything strictly below it,
/// a everything strictly above it.
enum class Flag { here, below, above };

inline char flag_char(Flag f) {
  switch (f) {
    case Flag::here: return 'h';
    case Flag::below: return 'b';
    case Flag::above: return 'a';
  }
  return '?';
}

inline std::optional<Flag> parse_flag(std::string_view s) {
  if (s == "h") return Flag::here;
  if (s == "b") return Flag::below;
  if (s == "a") return Flag::above;
  return std::nullopt;
}

/// Forbidden pattern <term, position, flag>.
class ForbiddenPattern {
 public:
  ForbiddenPattern(Term term, Position position, Flag flag)
      : term_(std::move(term)), position_(std::move(position)), flag_(flag) {
    if (!has_position(term_, position_))
      throw std::invalid_argument("pattern position " + position_.to_string() + " is not a position of " +
                                  to_string(term_));
  }

  const Term& term() const { return term_; }
  const Position& position() const { return position_; }
  Flag flag() const { return flag_; }

  friend bool operator==(const ForbiddenPattern&, const ForbiddenPattern&) = default;

 private:
  Term term_;
  Position position_;
  Flag flag_;
};

/// "(t, p, λ)", the syntax used inside a FORBIDDEN section.
inline std::string to_string(const ForbiddenPattern& pi) {
  return "(" + to_string(pi.term()) + ", " + pi.position().to_string() + ", " + flag_char(pi.flag()) + ")";
}

template <class F>
ForbiddenPattern rename_variables(const ForbiddenPattern& pi, F&& rename) {
  return ForbiddenPattern(rename_variables(pi.term(), rename), pi.position(), pi.flag());
}

inline ForbiddenPattern canonical_variant(const ForbiddenPattern& pi) {
  return ForbiddenPattern(canonical_variant(pi.term()), pi.position(), pi.flag());
}

/// Ordered set of forbidden patterns, deduplicated modulo variable renaming.
class PatternSet {
 public:
  PatternSet() = default;
  PatternSet(std::initializer_list<ForbiddenPattern> init) {
    for (const auto& p : init) insert(p);
  }
  explicit PatternSet(const std::vector<ForbiddenPattern>& patterns) {
    for (const auto& p : patterns) insert(p);
  }

  /// Returns false if a variant was already present.
  bool insert(const ForbiddenPattern& pi) {
    auto key = canonical_variant(pi);
    for (const auto& q : canonical_)
      if (q == key) return false;
    patterns_.push_back(pi);
    canonical_.push_back(std::move(key));
    return true;
  }

  bool contains(const ForbiddenPattern& pi) const {
    auto key = canonical_variant(pi);
    return std::find(canonical_.begin(), canonical_.end(), key) != canonical_.end();
  }

  std::size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }
  auto begin() const { return patterns_.begin(); }
  auto end() const { return patterns_.end(); }
  const ForbiddenPattern& operator[](std::size_t i) const { return patterns_[i]; }
  const std::vector<ForbiddenPattern>& items() const { return patterns_; }

  bool has_flag(Flag f) const {
    return std::any_of(patterns_.begin(), patterns_.end(), [&](const auto& p) { return p.flag() == f; });
  }

  friend bool operator==(const PatternSet& a, const PatternSet& b) { return a.patterns_ == b.patterns_; }

 private:
  std::vector<ForbiddenPattern> patterns_;
  std::vector<ForbiddenPattern> canonical_;
};

// ---------------------------------------------------------------------------
// Forbidden and allowed positions

/// P_{t,p}(s): positions o.p of s such that t matches s|_o. The flag is ignored.
inline std::vector<Position> anchor_positions(const ForbiddenPattern& pi, const Term& s) {
  std::vector<Position> out;
  for_each_position(s, [&](const Position& o, const Term& sub) {
    if (matches(pi.term(), sub)) out.push_back(o.concat(pi.position()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// P_π(s): the positions forbidden by a single pattern.
inline std::vector<Position> forbidden_by(const ForbiddenPattern& pi, const Term& s) {
  auto anchors = anchor_positions(pi, s);
  if (pi.flag() == Flag::here) return anchors;
  std::vector<Position> out;
  for_each_position(s, [&](const Position& o, const Term&) {
    for (const auto& q : anchors) {
      bool hit = pi.flag() == Flag::below ? o.is_below(q) : o.is_above(q);
      if (hit) {
        out.push_back(o);
        break;
      }
    }
  });
  return out;
}

/// Whether the single position q of s is forbidden by pi. Only anchors that can
/// reach q are inspected.
inline bool forbids(const ForbiddenPattern& pi, const Term& s, const Position& q) {
  if (!has_position(s, q)) return false;
  const auto& rel = pi.position();
  if (pi.flag() == Flag::above) {
    bool hit = false;
    for_each_position(subterm_at(s, q), [&](const Position& below, const Term&) {
      if (hit || below.is_root()) return;
      Position anchor = q.concat(below);
      if (anchor.depth() < rel.depth()) return;
      auto o = Position(std::vector<std::size_t>(anchor.path().begin(),
                                                 anchor.path().end() - static_cast<std::ptrdiff_t>(rel.depth())));
      if (o.concat(rel) == anchor && has_position(s, o) && matches(pi.term(), subterm_at(s, o))) hit = true;
    });
    return hit;
  }
  // h: q = o.p; b: o.p < q. Either way o is a prefix of q.
  for (std::size_t d = 0; d <= q.depth(); ++d) {
    Position o(std::vector<std::size_t>(q.path().begin(), q.path().begin() + static_cast<std::ptrdiff_t>(d)));
    Position anchor = o.concat(rel);
    bool relevant = pi.flag() == Flag::here ? anchor == q : anchor.is_above(q);
    if (relevant && matches(pi.term(), subterm_at(s, o))) return true;
  }
  return false;
}

/// First pattern of Π (in order) forbidding q in s.
inline std::optional<ForbiddenPattern> forbidding_pattern(const PatternSet& patterns, const Term& s,
                                                          const Position& q) {
  for (const auto& pi : patterns)
    if (forbids(pi, s, q)) return pi;
  return std::nullopt;
}

inline std::vector<Position> forbidden_positions(const PatternSet& patterns, const Term& s) {
  std::set<Position> out;
  for (const auto& pi : patterns)
    for (auto& p : forbidden_by(pi, s)) out.insert(p);
  return {out.begin(), out.end()};
}

inline std::vector<Position> allowed_positions(const PatternSet& patterns, const Term& s) {
  auto forbidden = forbidden_positions(patterns, s);
  std::vector<Position> out;
  for (auto& p : positions(s))
    if (!std::binary_search(forbidden.begin(), forbidden.end(), p)) out.push_back(p);
  return out;
}

inline bool is_allowed(const PatternSet& patterns, const Term& s, const Position& q) {
  return !forbidding_pattern(patterns, s, q).has_value();
}

// ---------------------------------------------------------------------------
// Rewriting with forbidden patterns

struct PiStep {
  Position position;
  std::size_t rule = 0;  // index into Trs::rules()
  Term result;

  friend bool operator==(const PiStep&, const PiStep&) = default;
};

/// All Π-steps from t, ordered by (position, rule index).
inline std::vector<PiStep> pi_step(const Trs& trs, const PatternSet& patterns, const Term& t) {
  std::vector<PiStep> out;
  for (const auto& p : allowed_positions(patterns, t)) {
    const Term& sub = subterm_at(t, p);
    if (sub.is_variable()) continue;
    for (std::size_t i = 0; i < trs.rules().size(); ++i) {
      const auto& rule = trs.rules()[i];
      if (auto sigma = match(rule.lhs(), sub)) out.push_back({p, i, replace_at(t, p, sigma->apply(rule.rhs()))});
    }
  }
  return out;
}

inline bool is_pi_normal_form(const Trs& trs, const PatternSet& patterns, const Term& t) {
  return pi_step(trs, patterns, t).empty();
}

// ---------------------------------------------------------------------------
// Stability and orthogonality

namespace detail {
// Non-variable positions of t that are parallel to p, or strictly below p when
// `include_below` is set, at which some rule of R overlaps t.
inline std::vector<Position> offending_positions(const Term& t, const Position& p, const Trs& trs,
                                                 bool include_below) {
  std::vector<Position> out;
  for (const auto& q : function_positions(t)) {
    bool relevant = q.is_parallel_to(p) || (include_below && q.is_below(p));
    if (relevant && overlaps_any(trs, t, q)) out.push_back(q);
  }
  return out;
}
}  // namespace detail

/// Linear, and not overlapped parallel to its position (b) or parallel to or
/// strictly below it (h). a-patterns are never stable.
inline bool is_stable(const ForbiddenPattern& pi, const Trs& trs) {
  if (pi.flag() == Flag::above || !is_linear(pi.term())) return false;
  return detail::offending_positions(pi.term(), pi.position(), trs, pi.flag() == Flag::here).empty();
}

inline PatternSet stb(const PatternSet& patterns, const Trs& trs) {
  PatternSet out;
  for (const auto& pi : patterns)
    if (is_stable(pi, trs)) out.insert(pi);
  return out;
}

/// h/b, linear, and not overlapped at any position parallel to or strictly below its position.
inline bool in_pi_orth(const ForbiddenPattern& pi, const Trs& trs) {
  if (pi.flag() == Flag::above || !is_linear(pi.term())) return false;
  return detail::offending_positions(pi.term(), pi.position(), trs, true).empty();
}

inline PatternSet pi_orth(const PatternSet& patterns, const Trs& trs) {
  PatternSet out;
  for (const auto& pi : patterns)
    if (in_pi_orth(pi, trs)) out.insert(pi);
  return out;
}

/// Linearizes the pattern term, then replaces overlapped subterms parallel to
/// or strictly below the pattern position by fresh variables, innermost first,
/// until the result is in Π_orth. A pattern already in Π_orth is returned as
/// is; otherwise the variables of the result are renamed to x1, x2, ...
inline ForbiddenPattern generalize(const ForbiddenPattern& pi, const Trs& trs) {
  if (pi.flag() == Flag::above) throw std::invalid_argument("cannot generalize an a-pattern");
  if (in_pi_orth(pi, trs)) return pi;
  FreshVariables fresh(variables(pi.term()), "g");
  Term t = linearize(pi.term(), fresh);
  for (;;) {
    auto offending = detail::offending_positions(t, pi.position(), trs, true);
    if (offending.empty()) break;
    // innermost: an offending position with no offending position strictly below it
    const Position* pick = nullptr;
    for (const auto& q : offending) {
      bool innermost = std::none_of(offending.begin(), offending.end(), [&](const Position& r) { return r.is_below(q); });
      if (innermost) {
        pick = &q;
        break;
      }
    }
    if (pick->is_prefix_of(pi.position()))
      throw std::logic_error("generalization would erase the pattern position");
    t = replace_at(t, *pick, fresh.next_term());
  }
  return ForbiddenPattern(canonical_variant(t), pi.position(), pi.flag());
}

/// b-patterns at the root of every left-hand side: Π-rewriting under this set
/// is outermost rewriting.
inline PatternSet outermost_encode(const Trs& trs) {
  PatternSet out;
  for (const auto& r : trs.rules()) out.insert(ForbiddenPattern(r.lhs(), Position::root(), Flag::below));
  return out;
}

}  // namespace fpcdp

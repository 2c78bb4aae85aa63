#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpcdp/term.hpp"

namespace fpcdp {

/// Finite map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init) : map_(init) {}

  bool contains(const std::string& v) const { return map_.count(v) != 0; }
  const Term* find(const std::string& v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
  }
  void bind(std::string v, Term t) { map_.insert_or_assign(std::move(v), std::move(t)); }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  Term apply(const Term& t) const {
    if (map_.empty()) return t;
    if (t.is_variable()) {
      auto it = map_.find(t.var_name());
      return it == map_.end() ? t : it->second;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
      args.push_back(apply(a));
      changed = changed || !(args.back() == a);
    }
    return changed ? Term::apply(t.symbol(), std::move(args)) : t;
  }

  /// A substitution is idempotent when no variable of its range is in its domain.
  bool is_idempotent() const {
    for (const auto& [v, t] : map_)
      for (const auto& w : variables(t))
        if (map_.count(w)) return false;
    return true;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> map_;
};

inline std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += v + "->" + to_string(t);
  }
  return out + "}";
}

namespace detail {
inline bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_variable()) {
    if (const Term* bound = sigma.find(pattern.var_name())) return *bound == subject;
    sigma.bind(pattern.var_name(), subject);
    return true;
  }
  if (subject.is_variable() || !(pattern.symbol() == subject.symbol())) return false;
  auto pa = pattern.args();
  auto sa = subject.args();
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (!match_into(pa[i], sa[i], sigma)) return false;
  return true;
}
}  // namespace detail

/// sigma with pattern·sigma = subject, if any. Repeated pattern variables must
/// bind syntactically equal subterms.
inline std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!detail::match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

inline bool matches(const Term& pattern, const Term& subject) {
  Substitution sigma;
  return detail::match_into(pattern, subject, sigma);
}

namespace detail {
// Resolves t under a triangular substitution.
inline Term resolve(const Term& t, const std::map<std::string, Term>& bindings) {
  if (t.is_variable()) {
    auto it = bindings.find(t.var_name());
    return it == bindings.end() ? t : resolve(it->second, bindings);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(resolve(a, bindings));
  return Term::apply(t.symbol(), std::move(args));
}

inline bool occurs(const std::string& v, const Term& t, const std::map<std::string, Term>& bindings) {
  if (t.is_variable()) {
    if (t.var_name() == v) return true;
    auto it = bindings.find(t.var_name());
    return it != bindings.end() && occurs(v, it->second, bindings);
  }
  for (const auto& a : t.args())
    if (occurs(v, a, bindings)) return true;
  return false;
}

inline Term walk(const Term& t, const std::map<std::string, Term>& bindings) {
  Term cur = t;
  while (cur.is_variable()) {
    auto it = bindings.find(cur.var_name());
    if (it == bindings.end()) break;
    cur = it->second;
  }
  return cur;
}
}  // namespace detail

/// Most general unifier (idempotent) with occurs check.
inline std::optional<Substitution> unify(const Term& s, const Term& t) {
  std::map<std::string, Term> bindings;
  std::vector<std::pair<Term, Term>> todo{{s, t}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    a = detail::walk(a, bindings);
    b = detail::walk(b, bindings);
    if (a == b) continue;
    if (a.is_variable() || b.is_variable()) {
      if (!a.is_variable()) std::swap(a, b);
      if (detail::occurs(a.var_name(), b, bindings)) return std::nullopt;
      bindings.emplace(a.var_name(), b);
      continue;
    }
    if (!(a.symbol() == b.symbol())) return std::nullopt;
    auto aa = a.args();
    auto ba = b.args();
    for (std::size_t i = aa.size(); i-- > 0;) todo.emplace_back(aa[i], ba[i]);
  }
  Substitution mgu;
  for (const auto& [v, u] : bindings) mgu.bind(v, detail::resolve(u, bindings));
  return mgu;
}

inline bool unifiable(const Term& s, const Term& t) { return unify(s, t).has_value(); }

}  // namespace fpcdp

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fpcdp/term.hpp"

namespace fpcdp {

/// Linear polynomial c0 + c1*x1 + ... + cn*xn over the naturals.
struct LinearPolynomial {
  std::int64_t constant = 0;
  std::vector<std::int64_t> coefficients;

  friend bool operator==(const LinearPolynomial&, const LinearPolynomial&) = default;
};

inline std::string to_string(const LinearPolynomial& p) {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += " + ";
    out += s;
  };
  if (p.constant != 0) add(std::to_string(p.constant));
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
    auto c = p.coefficients[i];
    if (c == 0) continue;
    std::string var = "x" + std::to_string(i + 1);
    add(c == 1 ? var : std::to_string(c) + "*" + var);
  }
  return out.empty() ? "0" : out;
}

/// Affine form over term variables: constant + sum of coefficient * variable.
struct Affine {
  std::int64_t constant = 0;
  std::map<std::string, std::int64_t> coefficients;

  std::int64_t coefficient(const std::string& v) const {
    auto it = coefficients.find(v);
    return it == coefficients.end() ? 0 : it->second;
  }
};

class Interpretation {
 public:
  void set(const Symbol& f, LinearPolynomial p) { map_.insert_or_assign(f, std::move(p)); }
  const LinearPolynomial* find(const Symbol& f) const {
    auto it = map_.find(f);
    return it == map_.end() ? nullptr : &it->second;
  }
  const std::map<Symbol, LinearPolynomial>& entries() const { return map_; }

  /// Symbols without an entry are read as the sum of their arguments.
  Affine evaluate(const Term& t) const {
    Affine out;
    if (t.is_variable()) {
      out.coefficients[t.var_name()] = 1;
      return out;
    }
    const LinearPolynomial* p = find(t.symbol());
    if (p) out.constant = p->constant;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      std::int64_t c = p ? p->coefficients.at(i) : 1;
      if (c == 0) continue;
      Affine a = evaluate(t.args()[i]);
      out.constant += c * a.constant;
      for (const auto& [v, k] : a.coefficients) out.coefficients[v] += c * k;
    }
    return out;
  }

  std::int64_t evaluate_ground(const Term& t, const std::map<std::string, std::int64_t>& values = {}) const {
    Affine a = evaluate(t);
    std::int64_t out = a.constant;
    for (const auto& [v, k] : a.coefficients) out += k * values.at(v);
    return out;
  }

 private:
  std::map<Symbol, LinearPolynomial> map_;
};

/// Absolute positiveness of [l] - [r] - margin: every coefficient of l
/// dominates that of r and the constants differ by at least `margin`.
inline bool dominates(const Affine& l, const Affine& r, std::int64_t margin) {
  if (l.constant - r.constant < margin) return false;
  for (const auto& [v, k] : r.coefficients)
    if (l.coefficient(v) < k) return false;
  return true;
}

inline bool weakly_oriented(const Interpretation& i, const Term& l, const Term& r) {
  return dominates(i.evaluate(l), i.evaluate(r), 0);
}

inline bool strictly_oriented(const Interpretation& i, const Term& l, const Term& r) {
  return dominates(i.evaluate(l), i.evaluate(r), 1);
}

struct OrientationConstraint {
  Term lhs;
  Term rhs;
  bool candidate_strict = false;  // pairs may be strict; rules only need to be weak
};

struct PolynomialSearch {
  std::int64_t coeff_max = 2;
  std::size_t node_budget = 2000000;
};

struct OrientationResult {
  Interpretation interpretation;
  std::vector<std::size_t> strict;  // indices of strictly oriented constraints
};

/// Backtracking search for a linear interpretation with coefficients in
/// [0, coeff_max] that weakly orients every constraint and strictly orients
/// at least one candidate. Symbols are assigned in decreasing frequency of
/// occurrence; each constraint is checked as soon as its symbols are fixed.
inline std::optional<OrientationResult> find_interpretation(const std::vector<OrientationConstraint>& constraints,
                                                            PolynomialSearch config = {}) {
  std::map<Symbol, std::size_t> frequency;
  for (const auto& c : constraints)
    for (const auto* t : {&c.lhs, &c.rhs})
      for_each_subterm(*t, [&](const Term& s) {
        if (!s.is_variable()) ++frequency[s.symbol()];
      });
  std::vector<Symbol> order;
  for (const auto& [f, n] : frequency) order.push_back(f);
  std::stable_sort(order.begin(), order.end(),
                   [&](const Symbol& a, const Symbol& b) { return frequency[a] > frequency[b]; });
  std::map<Symbol, std::size_t> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  // constraints to check once symbol `order[k]` has been assigned
  std::vector<std::vector<std::size_t>> ready(order.size());
  std::vector<std::size_t> no_symbols;
  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    std::size_t last = 0;
    bool any = false;
    for (const auto* t : {&constraints[ci].lhs, &constraints[ci].rhs})
      for (const auto& f : symbols(*t)) {
        last = std::max(last, rank.at(f));
        any = true;
      }
    (any ? ready[last] : no_symbols).push_back(ci);
  }

  Interpretation current;
  std::size_t nodes = 0;
  std::optional<OrientationResult> found;

  auto check = [&](const std::vector<std::size_t>& list) {
    for (auto ci : list)
      if (!weakly_oriented(current, constraints[ci].lhs, constraints[ci].rhs)) return false;
    return true;
  };
  if (!check(no_symbols)) return std::nullopt;

  auto finish = [&]() {
    OrientationResult r{current, {}};
    for (std::size_t ci = 0; ci < constraints.size(); ++ci)
      if (constraints[ci].candidate_strict && strictly_oriented(current, constraints[ci].lhs, constraints[ci].rhs))
        r.strict.push_back(ci);
    if (r.strict.empty()) return false;
    found = std::move(r);
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == order.size()) return finish();
    const Symbol& f = order[k];
    LinearPolynomial p;
    p.coefficients.assign(f.arity, 0);
    const std::size_t slots = f.arity + 1;
    std::vector<std::int64_t> digits(slots, 0);
    for (;;) {
      if (++nodes > config.node_budget) return true;  // give up; `found` stays empty
      p.constant = digits[0];
      for (std::size_t i = 0; i < f.arity; ++i) p.coefficients[i] = digits[i + 1];
      current.set(f, p);
      if (check(ready[k]) && assign(k + 1)) return true;
      std::size_t i = 0;
      while (i < slots && ++digits[i] > config.coeff_max) digits[i++] = 0;
      if (i == slots) break;
    }
    return false;
  };
  assign(0);
  return found;
}

}  // namespace fpcdp

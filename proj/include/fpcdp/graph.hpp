#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "fpcdp/cdp.hpp"

namespace fpcdp {

/// Estimated dependency graph over the pairs of a problem (by index).
class DependencyGraph {
 public:
  explicit DependencyGraph(std::size_t nodes = 0) : succ_(nodes) {}

  std::size_t size() const { return succ_.size(); }
  void add_edge(std::size_t from, std::size_t to) {
    auto& s = succ_.at(from);
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it == s.end() || *it != to) s.insert(it, to);
  }
  bool has_edge(std::size_t from, std::size_t to) const {
    return std::binary_search(succ_.at(from).begin(), succ_.at(from).end(), to);
  }
  const std::vector<std::size_t>& successors(std::size_t node) const { return succ_.at(node); }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < succ_.size(); ++i)
      for (auto j : succ_[i]) out.emplace_back(i, j);
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> succ_;
};

/// CAP replaces subterms with a defined root by fresh variables; REN then
/// makes every variable occurrence distinct.
inline Term ren_cap(const Term& t, const Trs& trs, FreshVariables& fresh) {
  if (t.is_variable()) return fresh.next_term();
  if (trs.is_defined(t.symbol())) return fresh.next_term();
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(ren_cap(a, trs, fresh));
  return Term::apply(t.symbol(), std::move(args));
}

/// Whether pair `to` may follow pair `from` in a chain. Token-rooted right-hand
/// sides admit no plain steps before the next pair, so they are unified as is.
inline bool may_follow(const ContextualRule& from, const ContextualRule& to, const CdpProblem& problem) {
  const Term& rhs = from.rhs();
  auto avoid = variables(to.lhs());
  if (!rhs.is_variable() && rhs.symbol() == problem.token)
    return unifiable(rename_away_from(rhs, avoid), to.lhs());
  FreshVariables fresh(avoid, "c");
  return unifiable(ren_cap(rhs, problem.rules, fresh), to.lhs());
}

inline DependencyGraph dependency_graph(const CdpProblem& problem) {
  DependencyGraph g(problem.pairs.size());
  for (std::size_t i = 0; i < problem.pairs.size(); ++i)
    for (std::size_t j = 0; j < problem.pairs.size(); ++j)
      if (may_follow(problem.pairs[i], problem.pairs[j], problem)) g.add_edge(i, j);
  return g;
}

/// Strongly connected components having at least one edge, each sorted, the
/// list ordered by smallest member.
inline std::vector<std::vector<std::size_t>> nontrivial_sccs(const DependencyGraph& g) {
  const std::size_t n = g.size();
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : g.successors(v)) {
      if (index[w] == unset) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::size_t> component;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      component.push_back(w);
    } while (w != v);
    std::sort(component.begin(), component.end());
    if (component.size() > 1 || g.has_edge(v, v)) out.push_back(std::move(component));
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == unset) connect(v);
  std::sort(out.begin(), out.end());
  return out;
}

struct WalkSet {
  std::vector<std::vector<std::size_t>> walks;
  bool capped = false;  // enumeration stopped at the cap; `walks` is incomplete
};

/// All walks of exactly `length` nodes starting at `start`, in lexicographic order.
inline WalkSet walks_from(const DependencyGraph& g, std::size_t start, std::size_t length, std::size_t cap = 10000) {
  WalkSet out;
  if (length == 0) return out;
  std::vector<std::size_t> walk{start};
  std::function<bool()> extend = [&]() {
    if (walk.size() == length) {
      if (out.walks.size() >= cap) {
        out.capped = true;
        return false;
      }
      out.walks.push_back(walk);
      return true;
    }
    for (auto next : g.successors(walk.back())) {
      walk.push_back(next);
      bool go_on = extend();
      walk.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  extend();
  return out;
}

}  // namespace fpcdp

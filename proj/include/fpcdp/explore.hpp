#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fpcdp/patterns.hpp"

namespace fpcdp {

struct DerivationStep;

/// A node of a bounded Π-derivation tree.
struct DerivationNode {
  Term term;
  std::vector<DerivationStep> steps;
  bool normal_form = false;  // no Π-step exists from `term`
  bool expanded = false;     // successors were computed and attached
};

struct DerivationStep {
  Position position;
  std::size_t rule = 0;
  DerivationNode child;
};

struct ExploreResult {
  DerivationNode root;
  bool reached_normal_form = false;
  std::optional<Term> first_normal_form;  // in breadth-first order
  std::size_t max_length = 0;             // longest derivation recorded in the tree
  std::size_t nodes = 0;
  bool budget_exceeded = false;  // depth or node budget cut some branch
};

struct ExploreBudget {
  std::size_t depth = 50;
  std::size_t nodes = 10000;
};

/// Breadth-first Π-derivation tree from t. Successors are attached in
/// (position, rule) order. Running out of budget is reported, never thrown.
inline ExploreResult explore(const Trs& trs, const PatternSet& patterns, const Term& t, ExploreBudget budget = {}) {
  ExploreResult result;
  result.root.term = t;
  result.nodes = 1;
  std::deque<std::pair<DerivationNode*, std::size_t>> queue{{&result.root, 0}};
  while (!queue.empty()) {
    auto [node, depth] = queue.front();
    queue.pop_front();
    auto steps = pi_step(trs, patterns, node->term);
    if (steps.empty()) {
      node->normal_form = true;
      node->expanded = true;
      if (!result.reached_normal_form) {
        result.reached_normal_form = true;
        result.first_normal_form = node->term;
      }
      result.max_length = std::max(result.max_length, depth);
      continue;
    }
    if (depth >= budget.depth || result.nodes + steps.size() > budget.nodes) {
      result.budget_exceeded = true;
      result.max_length = std::max(result.max_length, depth);
      continue;
    }
    node->expanded = true;
    node->steps.reserve(steps.size());
    for (auto& s : steps) {
      DerivationStep step{s.position, s.rule, DerivationNode{}};
      step.child.term = std::move(s.result);
      node->steps.push_back(std::move(step));
    }
    result.nodes += steps.size();
    result.max_length = std::max(result.max_length, depth + 1);
    for (auto& step : node->steps) queue.emplace_back(&step.child, depth + 1);
  }
  return result;
}

/// Outcome of searching for long or cyclic Π-derivations.
struct DerivationBound {
  std::size_t longest = 0;   // longest derivation found (exact when neither flag is set)
  bool cycle = false;        // some reachable term reaches itself
  bool exceeded = false;     // a derivation longer than the limit exists
  bool incomplete = false;   // term budget ran out before a verdict
};

/// Computes derivation heights under Π with memoization shared across queries.
class DerivationAnalyzer {
 public:
  DerivationAnalyzer(const Trs& trs, const PatternSet& patterns, std::size_t limit = 100,
                     std::size_t max_terms = 500000)
      : trs_(trs), patterns_(patterns), limit_(limit), max_terms_(max_terms) {}

  DerivationBound analyze(const Term& start) {
    DerivationBound bound;
    std::unordered_set<Term, TermHash> on_stack;
    auto h = height(start, 0, on_stack, bound);
    if (h) bound.longest = *h;
    return bound;
  }

  std::size_t terms_seen() const { return memo_.size(); }

 private:
  // nullopt means the search was aborted (flags in `bound` say why).
  std::optional<std::size_t> height(const Term& t, std::size_t depth, std::unordered_set<Term, TermHash>& on_stack,
                                    DerivationBound& bound) {
    if (auto it = memo_.find(t); it != memo_.end()) {
      if (depth + it->second > limit_) {
        bound.exceeded = true;
        return std::nullopt;
      }
      return it->second;
    }
    if (on_stack.count(t)) {
      bound.cycle = true;
      return std::nullopt;
    }
    if (depth > limit_) {
      bound.exceeded = true;
      return std::nullopt;
    }
    if (memo_.size() >= max_terms_) {
      bound.incomplete = true;
      return std::nullopt;
    }
    on_stack.insert(t);
    std::size_t best = 0;
    for (const auto& step : pi_step(trs_, patterns_, t)) {
      auto h = height(step.result, depth + 1, on_stack, bound);
      if (!h) return std::nullopt;
      best = std::max(best, *h + 1);
    }
    on_stack.erase(t);
    memo_.emplace(t, best);
    return best;
  }

  const Trs& trs_;
  const PatternSet& patterns_;
  std::size_t limit_;
  std::size_t max_terms_;
  std::unordered_map<Term, std::size_t, TermHash> memo_;
};

/// All ground terms over `signature` of depth at most `max_depth`, by increasing depth.
inline std::vector<Term> ground_terms(const std::set<Symbol>& signature, std::size_t max_depth,
                                      std::size_t max_count = 1000000) {
  std::vector<Term> all;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Term> level;
    const std::vector<Term> shallower = all;
    for (const auto& f : signature) {
      if (f.arity == 0) {
        if (d == 1) level.push_back(Term::apply(f));
        continue;
      }
      if (d == 1 || shallower.empty()) continue;
      // argument tuples over shallower terms, at least one of depth d-1
      std::vector<std::size_t> idx(f.arity, 0);
      for (;;) {
        std::vector<Term> args;
        bool reaches_depth = false;
        for (auto i : idx) {
          args.push_back(shallower[i]);
          reaches_depth = reaches_depth || shallower[i].depth() == d - 1;
        }
        if (reaches_depth) level.push_back(Term::apply(f, std::move(args)));
        if (all.size() + level.size() > max_count) throw std::length_error("too many ground terms");
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == shallower.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

}  // namespace fpcdp

#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fpcdp/cdp.hpp"
#include "fpcdp/graph.hpp"
#include "fpcdp/polynomial.hpp"

namespace fpcdp {

// ---------------------------------------------------------------------------
// Dependency graph processor

inline std::vector<CdpProblem> scc_processor(const CdpProblem& problem) {
  std::vector<CdpProblem> out;
  for (const auto& component : nontrivial_sccs(dependency_graph(problem))) {
    std::vector<ContextualRule> pairs;
    for (auto i : component) pairs.push_back(problem.pairs[i]);
    out.push_back(problem.with_pairs(std::move(pairs)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simple context processor

/// A walk whose nested hole position is forbidden by a pattern of Π_orth.
struct BlockedWalk {
  std::vector<std::size_t> walk;  // pair indices into the analyzed problem
  std::vector<ContextualRule> pairs;
  NestedContext nested;
  ForbiddenPattern pattern;
};

/// Justification for deleting one pair.
struct ScpDeletion {
  std::size_t pair = 0;  // index into the input problem
  std::vector<BlockedWalk> walks;  // empty: no walk of the required length exists
};

struct ScpOutcome {
  std::vector<ScpDeletion> deletions;
  CdpProblem result;
};

/// Checks every pair against all graph walks of length n starting at it. A
/// pair is deletable when each walk is blocked by a pattern of Π_orth; a walk
/// set cut off at `walk_cap` never justifies a deletion.
inline ScpOutcome scp_analyze(const CdpProblem& problem, std::size_t n, std::size_t walk_cap = 10000) {
  if (n <= 1) throw std::invalid_argument("SCP_n needs n > 1");
  const PatternSet orth = pi_orth(problem.patterns, problem.rules);
  const DependencyGraph graph = dependency_graph(problem);
  ScpOutcome out{{}, problem};
  std::vector<ContextualRule> kept;
  for (std::size_t i = 0; i < problem.pairs.size(); ++i) {
    ScpDeletion deletion{i, {}};
    WalkSet walks = walks_from(graph, i, n, walk_cap);
    bool deletable = !walks.capped;
    for (const auto& walk : walks.walks) {
      if (!deletable) break;
      std::vector<ContextualRule> pairs;
      for (auto k : walk) pairs.push_back(problem.pairs[k]);
      NestedContext nested = nested_context(pairs, problem);
      auto pattern = forbidding_pattern(orth, nested.term, nested.position);
      if (!pattern) {
        deletable = false;
        break;
      }
      deletion.walks.push_back({walk, std::move(pairs), std::move(nested), *pattern});
    }
    if (deletable)
      out.deletions.push_back(std::move(deletion));
    else
      kept.push_back(problem.pairs[i]);
  }
  out.result = problem.with_pairs(std::move(kept));
  return out;
}

inline std::vector<CdpProblem> scp_processor(const CdpProblem& problem, std::size_t n, std::size_t walk_cap = 10000) {
  return {scp_analyze(problem, n, walk_cap).result};
}

// ---------------------------------------------------------------------------
// Reduction pair processor

struct ReductionPairOutcome {
  Interpretation interpretation;
  std::vector<std::size_t> strict;  // pair indices removed
  bool rules_oriented = true;       // false when every rhs is token-rooted
  CdpProblem result;
};

/// Orients the pairs with their contexts stripped off, plus every rule of R.
/// When every pair has a token-rooted right-hand side no plain step can occur
/// between two pairs of a chain, so the rules are left out.
inline std::optional<ReductionPairOutcome> reduction_pair_analyze(const CdpProblem& problem,
                                                                  PolynomialSearch search = {}) {
  if (problem.pairs.empty()) return std::nullopt;
  std::vector<OrientationConstraint> constraints;
  for (const auto& p : problem.pairs) constraints.push_back({p.lhs(), p.rhs(), true});
  bool need_rules = std::any_of(problem.pairs.begin(), problem.pairs.end(), [&](const ContextualRule& p) {
    return p.rhs().is_variable() || !(p.rhs().symbol() == problem.token);
  });
  if (need_rules)
    for (const auto& r : problem.rules.rules()) constraints.push_back({r.lhs(), r.rhs(), false});
  auto found = find_interpretation(constraints, search);
  if (!found) return std::nullopt;
  ReductionPairOutcome out{found->interpretation, found->strict, need_rules, problem};
  std::vector<ContextualRule> kept;
  for (std::size_t i = 0; i < problem.pairs.size(); ++i)
    if (!std::binary_search(out.strict.begin(), out.strict.end(), i)) kept.push_back(problem.pairs[i]);
  out.result = problem.with_pairs(std::move(kept));
  return out;
}

inline std::vector<CdpProblem> reduction_pair_processor(const CdpProblem& problem, std::int64_t coeff_max = 2) {
  auto outcome = reduction_pair_analyze(problem, {coeff_max});
  if (!outcome) return {problem};
  return {outcome->result};
}

// ---------------------------------------------------------------------------
// Proof search

struct SccDetails {
  std::vector<std::vector<std::size_t>> components;  // pair indices of the input
};

struct ScpDetails {
  std::size_t n = 0;
  ScpDeletion deletion;
  ContextualRule deleted;
};

struct ReductionPairDetails {
  Interpretation interpretation;
  std::vector<ContextualRule> deleted;
  bool rules_oriented = true;
};

struct SynthesisDetails {
  ContextualRule target;
  std::vector<ForbiddenPattern> added;
  std::vector<std::string> notes;  // one line per synthesized pattern
};

/// One processor application: input problem, processor, output problems.
struct ProofNode {
  std::string processor;
  std::size_t input = 0;  // problem ids, see ProofResult::problems
  std::vector<std::size_t> outputs;
  std::variant<SccDetails, ScpDetails, ReductionPairDetails, SynthesisDetails> details;
};

enum class Verdict { proved, maybe };

inline const char* verdict_name(Verdict v) { return v == Verdict::proved ? "proved" : "maybe"; }

struct ProofResult {
  Verdict verdict = Verdict::maybe;
  std::vector<CdpProblem> problems;  // id 0 is the input
  std::vector<ProofNode> trace;
  std::vector<std::size_t> unresolved;  // ids of problems no processor could simplify
  bool timed_out = false;
};

struct ProverConfig {
  std::size_t scp_depth = 3;
  std::int64_t coeff_max = 2;
  std::size_t walk_cap = 10000;
  std::size_t polynomial_budget = 2000000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Called when no processor makes progress on a problem. It may append trace
/// nodes and return a modified problem to continue with.
using StuckHook = std::function<std::optional<CdpProblem>(const CdpProblem&, std::size_t id, ProofResult&)>;

/// Round robin scc -> scp -> reduction pair on every open problem until all
/// pair sets are empty (proved) or some problem admits no progress (maybe).
inline ProofResult prove(const CdpProblem& problem, const ProverConfig& config = {}, const StuckHook& on_stuck = {}) {
  ProofResult result;
  result.problems.push_back(problem);
  std::vector<std::size_t> open{0};
  auto add_problem = [&](CdpProblem p) {
    result.problems.push_back(std::move(p));
    return result.problems.size() - 1;
  };
  auto timed_out = [&]() { return config.deadline && std::chrono::steady_clock::now() >= *config.deadline; };

  while (!open.empty()) {
    if (timed_out()) {
      result.timed_out = true;
      result.unresolved.insert(result.unresolved.end(), open.begin(), open.end());
      break;
    }
    std::size_t id = open.front();
    open.erase(open.begin());
    const CdpProblem current = result.problems[id];
    if (current.pairs.empty()) continue;

    // dependency graph
    auto graph = dependency_graph(current);
    auto components = nontrivial_sccs(graph);
    bool whole = components.size() == 1 && components.front().size() == current.pairs.size();
    if (!whole) {
      ProofNode node{"SCC", id, {}, SccDetails{components}};
      std::vector<std::size_t> fresh;
      for (const auto& component : components) {
        std::vector<ContextualRule> pairs;
        for (auto i : component) pairs.push_back(current.pairs[i]);
        fresh.push_back(add_problem(current.with_pairs(std::move(pairs))));
      }
      node.outputs = fresh;
      result.trace.push_back(std::move(node));
      open.insert(open.begin(), fresh.begin(), fresh.end());
      continue;
    }

    // simple context processor, one node per deleted pair
    auto scp = scp_analyze(current, config.scp_depth, config.walk_cap);
    if (!scp.deletions.empty()) {
      std::size_t from = id;
      std::vector<ContextualRule> remaining = current.pairs;
      for (auto& deletion : scp.deletions) {
        const ContextualRule deleted = current.pairs[deletion.pair];
        remaining.erase(std::find(remaining.begin(), remaining.end(), deleted));
        std::size_t to = add_problem(current.with_pairs(remaining));
        result.trace.push_back({"SCP", from, {to}, ScpDetails{config.scp_depth, std::move(deletion), deleted}});
        from = to;
      }
      open.insert(open.begin(), from);
      continue;
    }

    if (timed_out()) {
      result.timed_out = true;
      result.unresolved.push_back(id);
      result.unresolved.insert(result.unresolved.end(), open.begin(), open.end());
      break;
    }
    auto rp = reduction_pair_analyze(current, {config.coeff_max, config.polynomial_budget});
    if (rp) {
      ReductionPairDetails details{rp->interpretation, {}, rp->rules_oriented};
      for (auto i : rp->strict) details.deleted.push_back(current.pairs[i]);
      std::size_t to = add_problem(rp->result);
      result.trace.push_back({"reduction pair", id, {to}, std::move(details)});
      open.insert(open.begin(), to);
      continue;
    }

    if (on_stuck) {
      if (auto next = on_stuck(current, id, result)) {
        std::size_t to = add_problem(std::move(*next));
        if (!result.trace.empty() && result.trace.back().input == id && result.trace.back().outputs.empty())
          result.trace.back().outputs.push_back(to);
        open.insert(open.begin(), to);
        continue;
      }
    }
    result.unresolved.push_back(id);
  }
  result.verdict = result.unresolved.empty() && !result.timed_out ? Verdict::proved : Verdict::maybe;
  return result;
}

}  // namespace fpcdp

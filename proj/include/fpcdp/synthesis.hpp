#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fpcdp/processors.hpp"

namespace fpcdp {

inline bool classify_structural(const ContextualRule& pair) { return pair.is_structural(); }

enum class SynthesisMode { on_the_fly, two_phase };

/// Which pairs synthesis may target.
struct PairFilter {
  enum class Kind { all, non_structural, explicit_list } kind = Kind::all;
  std::vector<ContextualRule> pairs;  // for explicit_list, compared up to renaming

  bool accepts(const ContextualRule& p) const {
    switch (kind) {
      case Kind::all: return true;
      case Kind::non_structural: return !classify_structural(p);
      case Kind::explicit_list:
        return std::any_of(pairs.begin(), pairs.end(), [&](const ContextualRule& q) { return is_variant(p, q); });
    }
    return false;
  }
};

struct SynthesisConfig {
  std::size_t n = 2;
  SynthesisMode mode = SynthesisMode::on_the_fly;
  PairFilter filter;
  std::size_t max_pattern_size = 25;
  std::size_t max_iterations = 3;
  std::size_t walk_cap = 10000;
  CdpMode cdp_mode = CdpMode::strict;
  ProverConfig prover;  // scp_depth is overridden by n
};

/// One pattern produced from one walk.
struct SynthesizedPattern {
  std::vector<ContextualRule> walk;
  ForbiddenPattern raw;      // <nested term, composite position, h>
  ForbiddenPattern pattern;  // after generalization, variables x1, x2, ...
  bool generalized = false;
  bool oversize = false;     // dropped
};

inline std::string describe(const SynthesizedPattern& s) {
  if (s.oversize)
    return to_string(s.pattern) + ": dropped, larger than the size limit";
  if (!s.generalized) return to_string(s.pattern) + ": orthogonal, no generalization needed";
  return to_string(s.pattern) + ": generalized from " + to_string(s.raw);
}

struct PairSynthesis {
  PatternSet patterns;
  std::vector<SynthesizedPattern> log;
  bool failed = false;  // walk cap hit or a pattern was dropped: SCP cannot delete the pair
};

/// Forbids the nested hole position of every graph walk of length n from the
/// pair that is not blocked by Π_orth yet.
inline PairSynthesis synthesize_for_pair(const CdpProblem& problem, std::size_t pair, std::size_t n,
                                         std::size_t max_pattern_size = 25, std::size_t walk_cap = 10000) {
  if (n <= 1) throw std::invalid_argument("synthesis needs n > 1");
  PairSynthesis out;
  const PatternSet orth = pi_orth(problem.patterns, problem.rules);
  const auto graph = dependency_graph(problem);
  WalkSet walks = walks_from(graph, pair, n, walk_cap);
  if (walks.capped) {
    out.failed = true;
    return out;
  }
  for (const auto& walk : walks.walks) {
    std::vector<ContextualRule> pairs;
    for (auto k : walk) pairs.push_back(problem.pairs[k]);
    NestedContext nested = nested_context(pairs, problem);
    if (forbidding_pattern(orth, nested.term, nested.position)) continue;
    ForbiddenPattern raw(nested.term, nested.position, Flag::here);
    ForbiddenPattern general = canonical_variant(generalize(raw, problem.rules));
    bool changed = !(canonical_variant(raw) == general);
    SynthesizedPattern entry{pairs, raw, general, changed, general.term().size() > max_pattern_size};
    if (entry.oversize)
      out.failed = true;
    else
      out.patterns.insert(general);
    out.log.push_back(std::move(entry));
  }
  return out;
}

struct SynthesisResult {
  PatternSet patterns;
  Verdict verdict = Verdict::maybe;
  ProofResult proof;
  std::size_t iterations = 0;
  std::vector<SynthesizedPattern> log;
};

namespace detail {
inline ProverConfig synthesis_prover(const SynthesisConfig& config) {
  ProverConfig p = config.prover;
  p.scp_depth = config.n;
  p.walk_cap = config.walk_cap;
  return p;
}

inline SynthesisResult synthesize_on_the_fly(const CdpProblem& seed, const SynthesisConfig& config) {
  SynthesisResult out;
  out.patterns = seed.patterns;
  StuckHook hook = [&](const CdpProblem& current, std::size_t id, ProofResult& proof) -> std::optional<CdpProblem> {
    for (std::size_t i = 0; i < current.pairs.size(); ++i) {
      if (!config.filter.accepts(current.pairs[i])) continue;
      auto syn = synthesize_for_pair(current, i, config.n, config.max_pattern_size, config.walk_cap);
      if (syn.failed || syn.patterns.empty()) continue;
      CdpProblem next = current;
      SynthesisDetails details{current.pairs[i], {}, {}};
      for (const auto& pi : syn.patterns) {
        next.patterns.insert(pi);
        out.patterns.insert(pi);
        details.added.push_back(pi);
      }
      for (const auto& entry : syn.log) details.notes.push_back(describe(entry));
      out.log.insert(out.log.end(), syn.log.begin(), syn.log.end());
      ++out.iterations;
      proof.trace.push_back({"synthesis", id, {}, std::move(details)});
      return next;
    }
    return std::nullopt;
  };
  out.proof = prove(seed, synthesis_prover(config), hook);
  out.verdict = out.proof.verdict;
  return out;
}
}  // namespace detail

/// Synthesis starting from a given CDP problem. two_phase re-runs the prover on
/// the same pairs with the accumulated patterns.
inline SynthesisResult synthesize(const CdpProblem& seed, const SynthesisConfig& config) {
  if (config.n <= 1) throw std::invalid_argument("synthesis needs n > 1");
  if (config.mode == SynthesisMode::on_the_fly) return detail::synthesize_on_the_fly(seed, config);
  SynthesisResult out;
  CdpProblem problem = seed;
  out.patterns = seed.patterns;
  out.proof = prove(problem, detail::synthesis_prover(config));
  for (std::size_t it = 0; it < config.max_iterations && out.proof.verdict != Verdict::proved; ++it) {
    bool added = false;
    for (std::size_t i = 0; i < problem.pairs.size(); ++i) {
      if (!config.filter.accepts(problem.pairs[i])) continue;
      auto syn = synthesize_for_pair(problem, i, config.n, config.max_pattern_size, config.walk_cap);
      for (const auto& pi : syn.patterns) added = out.patterns.insert(pi) || added;
      out.log.insert(out.log.end(), syn.log.begin(), syn.log.end());
    }
    ++out.iterations;
    if (!added) break;
    problem.patterns = out.patterns;
    out.proof = prove(problem, detail::synthesis_prover(config));
  }
  out.verdict = out.proof.verdict;
  return out;
}

/// Synthesis for a TRS: CDPs are built for the empty pattern set. two_phase
/// rebuilds the CDPs from scratch with the accumulated patterns each round.
inline SynthesisResult synthesize(const Trs& trs, const SynthesisConfig& config) {
  if (config.n <= 1) throw std::invalid_argument("synthesis needs n > 1");
  CdpProblem seed = build_cdps(trs, {}, config.cdp_mode);
  if (config.mode == SynthesisMode::on_the_fly) return detail::synthesize_on_the_fly(seed, config);
  SynthesisResult out;
  CdpProblem problem = seed;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    bool added = false;
    for (std::size_t i = 0; i < problem.pairs.size(); ++i) {
      if (!config.filter.accepts(problem.pairs[i])) continue;
      auto syn = synthesize_for_pair(problem, i, config.n, config.max_pattern_size, config.walk_cap);
      for (const auto& pi : syn.patterns) added = out.patterns.insert(pi) || added;
      out.log.insert(out.log.end(), syn.log.begin(), syn.log.end());
    }
    ++out.iterations;
    if (!added && it > 0) break;
    problem = build_cdps(trs, out.patterns, config.cdp_mode);
    out.proof = prove(problem, detail::synthesis_prover(config));
    if (out.proof.verdict == Verdict::proved || !added) break;
  }
  out.verdict = out.proof.verdict;
  return out;
}

/// Heuristic checks on a pattern set: pattern terms should not overlap each
/// other, and each should contain a redex that is allowed. Advisory only.
inline std::vector<std::string> pattern_warnings(const PatternSet& patterns, const Trs& trs) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < patterns.size(); ++i)
    for (std::size_t j = i + 1; j < patterns.size(); ++j) {
      auto b = rename_away_from(patterns[j].term(), variables(patterns[i].term()));
      if (unifiable(patterns[i].term(), b))
        out.push_back("patterns " + to_string(patterns[i]) + " and " + to_string(patterns[j]) + " overlap");
    }
  for (const auto& pi : patterns) {
    const Term& t = pi.term();
    bool redex = false;
    for (const auto& q : function_positions(t))
      if (overlaps_any(trs, t, q) && is_allowed(patterns, t, q)) {
        redex = true;
        break;
      }
    if (!redex) out.push_back("pattern " + to_string(pi) + " contains no allowed redex");
  }
  return out;
}

}  // namespace fpcdp

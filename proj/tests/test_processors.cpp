#include <gtest/gtest.h>

#include "fpcdp/fpcdp.hpp"
#include "support/fixtures.hpp"

using namespace fpcdp;
using fixtures::pattern;

namespace {

CdpProblem lazy_below() {
  return build_cdps(fixtures::lazy_lists(), PatternSet{pattern("cons(x, cons(y, zs))", "e", Flag::below)});
}

std::size_t index_of(const CdpProblem& p, const std::string& canonical_text) {
  for (std::size_t i = 0; i < p.pairs.size(); ++i)
    if (to_string(canonical_variant(p.pairs[i])) == canonical_text) return i;
  throw std::runtime_error("no pair " + canonical_text);
}

}  // namespace

TEST(Graph, TokenRootedRhsUnifiesDirectly) {
  auto p = build_cdps(fixtures::unfold_then_g(), PatternSet{pattern("f(x)", "1", Flag::here)});
  auto g = dependency_graph(p);
  std::size_t vc = index_of(p, "f#(x1) -> T(x1) [g(□)]");
  std::size_t act_a = index_of(p, "T(a) -> a# [□]");
  std::size_t act_f = index_of(p, "T(f(x1)) -> f#(x1) [□]");
  std::size_t dpc = index_of(p, "a# -> f#(a) [□]");
  EXPECT_TRUE(g.has_edge(vc, act_a));
  EXPECT_TRUE(g.has_edge(vc, act_f));
  EXPECT_TRUE(g.has_edge(dpc, vc));
  EXPECT_FALSE(g.has_edge(act_a, vc));
  EXPECT_TRUE(g.has_edge(act_a, dpc));
}

TEST(Graph, CapAbstractsDefinedSubterms) {
  Trs trs = fixtures::lazy_lists();
  FreshVariables fresh;
  Term capped = ren_cap(parse_term("cons(x, inf(s(x)))", {"x"}), trs, fresh);
  EXPECT_TRUE(capped.arg(1).is_variable());
  EXPECT_TRUE(capped.arg(2).is_variable());
  EXPECT_FALSE(capped.arg(1) == capped.arg(2));
}

TEST(Graph, SccsAndWalks) {
  CdpProblem p = lazy_below();
  auto g = dependency_graph(p);
  auto sccs = nontrivial_sccs(g);
  ASSERT_EQ(sccs.size(), 1u);
  EXPECT_EQ(sccs[0].size(), 8u);  // everything but the 2nd# pair
  std::size_t a1 = index_of(p, "inf#(x1) -> inf#(s(x1)) [cons(x1,□)]");
  auto walks = walks_from(g, a1, 3);
  EXPECT_FALSE(walks.capped);
  for (const auto& w : walks.walks) {
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0], a1);
    EXPECT_TRUE(g.has_edge(w[0], w[1]) && g.has_edge(w[1], w[2]));
  }
  EXPECT_TRUE(std::is_sorted(walks.walks.begin(), walks.walks.end()));
  auto capped = walks_from(g, a1, 3, 2);
  EXPECT_TRUE(capped.capped);
  EXPECT_EQ(capped.walks.size(), 2u);
}

TEST(Polynomial, FindsSimpleInterpretation) {
  Term l = parse_term("f(s(x))", {"x"}), r = parse_term("f(x)", {"x"});
  auto found = find_interpretation({{l, r, true}});
  ASSERT_TRUE(found);
  EXPECT_TRUE(strictly_oriented(found->interpretation, l, r));
  EXPECT_EQ(found->strict, std::vector<std::size_t>{0});
}

TEST(Polynomial, RejectsSelfEmbedding) {
  Term l = parse_term("f(x)", {"x"}), r = parse_term("f(f(x))", {"x"});
  EXPECT_FALSE(find_interpretation({{l, r, true}}));
  // zero coefficients make duplication harmless
  EXPECT_TRUE(find_interpretation({{l, parse_term("h(x, x)", {"x"}), true}}));
  EXPECT_FALSE(find_interpretation({{l, l, true}}));
}

TEST(Polynomial, NodeBudgetIsRespected) {
  Term l = parse_term("f(s(x))", {"x"}), r = parse_term("f(x)", {"x"});
  EXPECT_FALSE(find_interpretation({{l, r, true}}, {2, 1}));
}

TEST(Polynomial, Rendering) {
  LinearPolynomial p{1, {1, 0}};
  EXPECT_EQ(to_string(p), "1 + x1");
  EXPECT_EQ(to_string(LinearPolynomial{0, {0}}), "0");
}

TEST(Scp, DeletesUnfoldingPairAtDepthThree) {
  CdpProblem p = fixtures::unfold_below_three();
  auto outcome = scp_analyze(p, 3);
  ASSERT_EQ(outcome.deletions.size(), 1u);
  const auto& w = outcome.deletions[0].walks;
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(to_string(w[0].nested.term), "f(f(f(a)))");
  EXPECT_EQ(w[0].nested.position.to_string(), "1.1.1");
  EXPECT_TRUE(outcome.result.pairs.empty());
  // at depth 2 the hole of f(f(□)) is still allowed
  EXPECT_TRUE(scp_analyze(p, 2).deletions.empty());
  EXPECT_THROW(scp_analyze(p, 1), std::invalid_argument);
}

TEST(Scp, LazyListsDeletesFirstPair) {
  CdpProblem p = lazy_below();
  auto outcome = scp_analyze(p, 3);
  std::size_t a1 = index_of(p, "inf#(x1) -> inf#(s(x1)) [cons(x1,□)]");
  bool deleted = std::any_of(outcome.deletions.begin(), outcome.deletions.end(),
                             [&](const ScpDeletion& d) { return d.pair == a1; });
  EXPECT_TRUE(deleted);
}

TEST(Scp, CappedWalkSetsNeverDelete) {
  CdpProblem p = lazy_below();
  EXPECT_TRUE(scp_analyze(p, 3, 1).deletions.empty());
}

TEST(ReductionPair, TokenRootedPairsNeedNoRules) {
  auto p = build_cdps(fixtures::unfold(), {});
  std::vector<ContextualRule> shift;
  for (const auto& pair : p.pairs)
    if (pair.origin() == Origin::sc) shift.push_back(pair);
  ASSERT_EQ(shift.size(), 1u);
  auto outcome = reduction_pair_analyze(p.with_pairs(shift));
  ASSERT_TRUE(outcome);
  EXPECT_FALSE(outcome->rules_oriented);
  EXPECT_TRUE(outcome->result.pairs.empty());
}

TEST(ReductionPair, RulesAreOrientedOtherwise) {
  auto p = build_cdps(fixtures::unfold(), {});
  auto outcome = reduction_pair_analyze(p);
  ASSERT_TRUE(outcome);
  EXPECT_TRUE(outcome->rules_oriented);
  ASSERT_EQ(outcome->strict.size(), 1u);
  EXPECT_EQ(to_string(p.pairs[outcome->strict[0]]), "T(a) -> a# [□]");
  // a# -> a# [f(□)] survives
  EXPECT_EQ(outcome->result.pairs.size(), p.pairs.size() - 1);
}

TEST(Prover, UnfoldingPairIsProvedBySimpleContexts) {
  ProverConfig config;
  config.scp_depth = 3;
  auto result = prove(fixtures::unfold_below_three(), config);
  EXPECT_EQ(result.verdict, Verdict::proved);
  auto text = render_proof(result);
  EXPECT_TRUE(fixtures::contains(text, "nested term f(f(f(a))), position 1.1.1"));
  EXPECT_TRUE(fixtures::contains(text, "forbidden by (f(f(f(x))), 1.1, b)"));
  EXPECT_TRUE(fixtures::contains(text, "verdict: proved"));
}

TEST(Prover, EmptyProblemIsTriviallyFinite) {
  CdpProblem p = fixtures::unfold_below_three();
  p.pairs.clear();
  auto result = prove(p);
  EXPECT_EQ(result.verdict, Verdict::proved);
  EXPECT_EQ(render_proof(result), "trivially finite: no pairs\nverdict: proved\n");
}

TEST(Prover, NonTerminatingSystemStaysOpen) {
  auto p = build_cdps(fixtures::unfold_then_g(), PatternSet{pattern("f(x)", "1", Flag::here)});
  auto result = prove(p);
  EXPECT_EQ(result.verdict, Verdict::maybe);
  EXPECT_FALSE(result.unresolved.empty());
}

TEST(Prover, ExpiredDeadlineStops) {
  ProverConfig config;
  config.deadline = std::chrono::steady_clock::now();
  auto result = prove(lazy_below(), config);
  EXPECT_TRUE(result.timed_out);
  EXPECT_EQ(result.verdict, Verdict::maybe);
}

TEST(Prover, StuckHookMayContinue) {
  auto p = build_cdps(fixtures::unfold(), {});
  std::size_t calls = 0;
  auto result = prove(p, {}, [&](const CdpProblem&, std::size_t, ProofResult&) -> std::optional<CdpProblem> {
    ++calls;
    return std::nullopt;
  });
  EXPECT_GE(calls, 1u);
  EXPECT_EQ(result.verdict, Verdict::maybe);
}

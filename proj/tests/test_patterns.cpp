#include <gtest/gtest.h>

#include "fpcdp/fpcdp.hpp"
#include "support/fixtures.hpp"

using namespace fpcdp;
using fixtures::pattern;

namespace {

Term t(const std::string& s) { return parse_term(s, {"x", "y", "z", "zs"}); }

std::vector<std::string> texts(const std::vector<Position>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST(Forbidden, FlagsSelectHereBelowAbove) {
  Term s = t("f(f(f(a)))");
  EXPECT_EQ(texts(forbidden_by(pattern("f(f(x))", "1", Flag::here), s)), (std::vector<std::string>{"1", "1.1"}));
  EXPECT_EQ(texts(forbidden_by(pattern("f(f(f(x)))", "1.1", Flag::below), s)), (std::vector<std::string>{"1.1.1"}));
  EXPECT_EQ(texts(forbidden_by(pattern("f(a)", "1", Flag::above), s)), (std::vector<std::string>{"e", "1", "1.1"}));
}

TEST(Forbidden, LazyListNormalForm) {
  Trs trs = fixtures::lazy_lists();
  PatternSet pi{pattern("cons(x, cons(y, z))", "2.2", Flag::here)};
  Term s = t("cons(0, cons(s(0), inf(s(s(0)))))");
  EXPECT_TRUE(pi_step(trs, pi, s).empty());
  EXPECT_TRUE(is_pi_normal_form(trs, pi, s));
  EXPECT_EQ(pi_step(trs, {}, s).size(), 1u);
}

TEST(Forbidden, UnfoldThenGStepsAndPrefix) {
  Trs trs = fixtures::unfold_then_g();
  PatternSet pi{pattern("f(x)", "1", Flag::here)};
  auto steps = pi_step(trs, pi, t("f(a)"));
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(to_string(steps[0].result), "g(a)");

  auto tree = explore(trs, pi, t("a"), {5, 100});
  std::vector<std::string> prefix{to_string(tree.root.term)};
  const DerivationNode* node = &tree.root;
  while (!node->steps.empty()) {
    ASSERT_EQ(node->steps.size(), 1u);
    node = &node->steps[0].child;
    prefix.push_back(to_string(node->term));
  }
  EXPECT_EQ(prefix, (std::vector<std::string>{"a", "f(a)", "g(a)", "g(f(a))", "g(g(a))", "g(g(f(a)))"}));
  EXPECT_FALSE(tree.reached_normal_form);
  EXPECT_TRUE(tree.budget_exceeded);
}

TEST(Forbidden, StableAndOrthogonal) {
  Trs trs = fixtures::lazy_lists();
  auto here = pattern("cons(x, cons(y, z))", "2.2", Flag::here);
  EXPECT_TRUE(is_stable(here, trs));
  EXPECT_TRUE(in_pi_orth(here, trs));
  // inf overlaps only at 2.2 itself
  auto unfolded = pattern("cons(x, cons(y, inf(s(z))))", "2.2", Flag::here);
  EXPECT_TRUE(in_pi_orth(unfolded, trs));
  auto parallel = pattern("cons(inf(x), y)", "2", Flag::here);
  EXPECT_FALSE(is_stable(parallel, trs));
  EXPECT_FALSE(is_stable(pattern("h(x, x)", "1", Flag::below), trs));
  EXPECT_FALSE(is_stable(pattern("f(x)", "1", Flag::above), trs));

  auto below = pattern("f(inf(x))", "e", Flag::below);
  EXPECT_TRUE(is_stable(below, trs));
  EXPECT_FALSE(in_pi_orth(below, trs));
}

TEST(Forbidden, GeneralizeReplacesInnermostOverlaps) {
  Trs trs = fixtures::lazy_lists();
  auto raw = pattern("cons(x, cons(inf(y), inf(s(inf(z)))))", "2.2", Flag::here);
  auto gen = generalize(raw, trs);
  EXPECT_TRUE(in_pi_orth(gen, trs));
  EXPECT_EQ(to_string(gen), "(cons(x1,cons(x2,inf(s(x3)))), 2.2, h)");
  auto already = pattern("cons(x, cons(y, z))", "2.2", Flag::here);
  EXPECT_EQ(generalize(already, trs), already);
  EXPECT_THROW(generalize(pattern("f(x)", "1", Flag::above), trs), std::invalid_argument);
}

TEST(Forbidden, OutermostEncodingUsesBelowAtRoot) {
  Trs trs = fixtures::lazy_lists();
  PatternSet enc = outermost_encode(trs);
  ASSERT_EQ(enc.size(), 2u);
  for (const auto& pi : enc) {
    EXPECT_EQ(pi.flag(), Flag::below);
    EXPECT_TRUE(pi.position().is_root());
  }
  // the inner inf is below a redex
  auto steps = pi_step(trs, enc, t("inf(inf(0))"));
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_TRUE(steps[0].position.is_root());
}

TEST(Forbidden, PatternSetDeduplicatesVariants) {
  PatternSet s;
  EXPECT_TRUE(s.insert(pattern("f(x)", "1", Flag::here)));
  EXPECT_FALSE(s.insert(pattern("f(y)", "1", Flag::here)));
  EXPECT_TRUE(s.insert(pattern("f(y)", "1", Flag::below)));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_THROW(pattern("f(x)", "2", Flag::here), std::invalid_argument);
}

TEST(Explore, AnalyzerFindsCyclesAndHeights) {
  Trs trs = fixtures::unfold_then_g();
  PatternSet pi{pattern("f(x)", "1", Flag::here)};
  DerivationAnalyzer looping(trs, pi, 100);
  auto b = looping.analyze(t("a"));
  EXPECT_TRUE(b.exceeded || b.cycle);

  Trs unfold = fixtures::unfold();
  PatternSet three{pattern("f(f(f(x)))", "1.1", Flag::below)};
  DerivationAnalyzer bounded(unfold, three, 100);
  auto h = bounded.analyze(t("a"));
  EXPECT_FALSE(h.cycle || h.exceeded || h.incomplete);
  EXPECT_EQ(h.longest, 3u);

  Trs swap = parse("(RULES c -> d d -> c)").trs;
  PatternSet none;
  DerivationAnalyzer cyc(swap, none, 100);
  EXPECT_TRUE(cyc.analyze(t("c")).cycle);
}

TEST(Explore, GroundTermsByDepth) {
  std::set<Symbol> sig{Symbol("a", 0), Symbol("f", 1)};
  auto terms = ground_terms(sig, 3);
  std::vector<std::string> text;
  for (const auto& g : terms) text.push_back(to_string(g));
  EXPECT_EQ(text, (std::vector<std::string>{"a", "f(a)", "f(f(a))"}));
}

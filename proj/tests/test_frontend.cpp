#include <gtest/gtest.h>

#include "fpcdp/fpcdp.hpp"
#include "support/fixtures.hpp"

using namespace fpcdp;
using fixtures::contains;
using fixtures::corpus;
using fixtures::run;

TEST(Parser, ReadsAllSections) {
  auto spec = parse(
      "(COMMENT nested (parens) are fine)\n(VAR x)\n(RULES a -> f(a) f(x) -> g(x))\n(FORBIDDEN (f(x), 1, h))\n");
  EXPECT_EQ(spec.trs.rules().size(), 2u);
  EXPECT_EQ(spec.declared_patterns.size(), 1u);
  EXPECT_EQ(spec.strategy, Strategy::full);
  EXPECT_TRUE(spec.warnings.empty());
}

TEST(Parser, OutermostStrategyEncodes) {
  auto spec = parse("(VAR x) (RULES f(x) -> b) (STRATEGY OUTERMOST)");
  EXPECT_EQ(spec.strategy, Strategy::outermost);
  EXPECT_EQ(spec.effective_patterns().size(), 1u);
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  try {
    parse("(VAR x)\n(RULES f(x) -> )\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 16u);
  }
  EXPECT_THROW(parse("(RULES f(a) -> f(a, a))"), ParseError);
  EXPECT_THROW(parse("(VAR x y) (RULES f(x) -> y)"), ParseError);
  EXPECT_THROW(parse("(VAR x) (RULES x -> a)"), ParseError);
  EXPECT_THROW(parse("(RULES a -> b) (FORBIDDEN (f(a), 2, h))"), ParseError);
  EXPECT_THROW(parse("(RULES a -> b) (FORBIDDEN (a, e, q))"), ParseError);
  EXPECT_THROW(parse("(RULES a -> b) (STRATEGY INNERMOST)"), ParseError);
  EXPECT_THROW(parse("(RULES a -> b) (STRATEGY OUTERMOST) (FORBIDDEN (a, e, h))"), ParseError);
  EXPECT_THROW(parse("(RULES a -> b) (COMMENT open"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("(RULES a -> b) (FOO)"), ParseError);
}

TEST(Parser, WarnsAboutUndeclaredPatternConstants) {
  auto spec = parse("(RULES a -> f(a)) (FORBIDDEN (f(y), 1, h) (f(y), 1, h))");
  ASSERT_EQ(spec.warnings.size(), 2u);
  EXPECT_TRUE(contains(spec.warnings[0], "duplicate"));
  EXPECT_TRUE(contains(spec.warnings[1], "identifier y"));
}

TEST(Parser, PrintRoundTrip) {
  auto spec = parse("(VAR x y z) (RULES inf(x) -> cons(x, inf(s(x)))) (FORBIDDEN (cons(x, cons(y, z)), 2.2, h))");
  EXPECT_EQ(parse(print(spec)), spec);
}

TEST(Cli, ProveExitCodes) {
  auto proved = run({"prove", corpus("example6_below_three.trs")});
  EXPECT_EQ(proved.code, 0) << proved.err;
  EXPECT_TRUE(contains(proved.out, "verdict: proved"));
  auto maybe = run({"prove", corpus("example2_forbidden_here.trs")});
  EXPECT_EQ(maybe.code, 1);
  EXPECT_TRUE(contains(maybe.out, "verdict: maybe"));
  auto missing = run({"prove", corpus("no_such_file.trs")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(contains(missing.err, "error:"));
  EXPECT_EQ(run({"prove", corpus("example6_below_three.trs"), "--scp-depth", "1"}).code, 2);
  EXPECT_EQ(run({"prove", corpus("example6_below_three.trs"), "--mode", "lazy"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, CdpsAndGraph) {
  auto compat = run({"cdps", corpus("example2_forbidden_here.trs"), "--mode", "compat"});
  EXPECT_EQ(compat.code, 0);
  EXPECT_TRUE(contains(compat.out, "8 pairs (compat)"));
  EXPECT_TRUE(contains(compat.out, "a# -> a# [f(□)]  DPc  (compat only)"));
  auto strict = run({"cdps", corpus("example2_forbidden_here.trs")});
  EXPECT_TRUE(contains(strict.out, "6 pairs (strict)"));
  auto graph = run({"graph", corpus("example6_below_three.trs")});
  EXPECT_EQ(graph.code, 0);
  EXPECT_TRUE(contains(graph.out, "sccs:"));
}

TEST(Cli, RewriteFindsNormalForm) {
  auto r = run({"rewrite", corpus("example1_2nd_inf.trs"), "--term", "2nd(inf(0))"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "normal form: s(0)"));
  auto diverge = run({"rewrite", corpus("example2_forbidden_here.trs"), "--term", "a", "--depth", "20"});
  EXPECT_EQ(diverge.code, 1);
  EXPECT_EQ(run({"rewrite", corpus("example2_forbidden_here.trs"), "--term", "f(a"}).code, 2);
}

TEST(Cli, SynthesizeSubcommand) {
  auto r = run({"synthesize", corpus("example9_unfold.trs"), "--scp-depth", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "synthesized (f(f(a)), 1.1, h): orthogonal, no generalization needed"));
}

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "fpcdp/cli.hpp"
#include "fpcdp/fpcdp.hpp"

namespace fixtures {

using namespace fpcdp;

inline std::string corpus(const std::string& name) { return std::string(FPCDP_CORPUS_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) { return fpcdp::detail::read_input(path); }

/// inf(x) -> x : inf(s(x)), 2nd(x : (y : zs)) -> y
inline Trs lazy_lists() {
  return parse("(VAR x y zs) (RULES inf(x) -> cons(x, inf(s(x))) 2nd(cons(x, cons(y, zs))) -> y)").trs;
}

/// a -> f(a), f(x) -> g(x)
inline Trs unfold_then_g() { return parse("(VAR x) (RULES a -> f(a) f(x) -> g(x))").trs; }

inline Trs unfold() { return parse("(RULES a -> f(a))").trs; }

inline ForbiddenPattern pattern(const std::string& term, const std::string& pos, Flag flag,
                                const std::set<std::string>& vars = {"x", "y", "z", "zs"}) {
  return ForbiddenPattern(parse_term(term, vars), *Position::parse(pos), flag);
}

/// Parses a term in which x, x', x'', y, z, zs are variables and "[]" is the hole.
inline Term context_term(std::string text) {
  for (std::size_t at = text.find("[]"); at != std::string::npos; at = text.find("[]"))
    text.replace(at, 2, "HOLE");
  Term t = parse_term(text, {"x", "x'", "x''", "y", "z", "zs"});
  auto holes = positions(t);
  for (const auto& p : holes) {
    const Term& s = subterm_at(t, p);
    if (!s.is_variable() && s.symbol().name == "HOLE") return replace_at(t, p, Term::hole());
  }
  return t;
}

/// The problem ({a# -> a# [f(□)]}, {a -> f(a)}, {(f(f(f(x))), 1.1, b)}, T).
inline CdpProblem unfold_below_three() {
  CdpProblem p;
  p.rules = unfold();
  p.patterns = PatternSet{pattern("f(f(f(x)))", "1.1", Flag::below)};
  p.token = choose_token(p.rules);
  Symbol a("a", 0);
  Term am = Term::apply(p.marking.mark(a));
  p.pairs.emplace_back(am, am, context_term("f([])"), Origin::dpc);
  return p;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "fpcdp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace fixtures

#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpcdp/explore.hpp"
#include "fpcdp/io.hpp"
#include "fpcdp/synthesis.hpp"
#include "fpcdp/trace.hpp"

namespace fpcdp {

namespace detail {

struct CliOptions {
  std::string file;
  std::size_t scp_depth = 3;
  std::string mode = "strict";
  std::int64_t coeff_max = 2;
  std::string synthesize;
  std::string pair_filter = "all";
  std::size_t walk_cap = 10000;
  std::size_t depth = 50;
  std::size_t width = 10000;
  std::string term;
  double timeout = 0;
};

inline std::string read_input(const std::string& file) {
  std::ostringstream buf;
  if (file == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  buf << in.rdbuf();
  return buf.str();
}

inline ProverConfig prover_config(const CliOptions& o) {
  ProverConfig c;
  c.scp_depth = o.scp_depth;
  c.coeff_max = o.coeff_max;
  c.walk_cap = o.walk_cap;
  if (o.timeout > 0)
    c.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(o.timeout));
  return c;
}

inline CdpMode cdp_mode(const CliOptions& o) { return o.mode == "compat" ? CdpMode::compat : CdpMode::strict; }

inline InputSpec load(const CliOptions& o, std::ostream& err) {
  InputSpec spec = parse(read_input(o.file));
  for (const auto& w : spec.warnings) err << "warning: " << w << "\n";
  return spec;
}

inline int run_synthesis(const InputSpec& spec, const CliOptions& o, std::ostream& out, std::ostream& err) {
  SynthesisConfig config;
  config.n = o.scp_depth;
  config.mode = o.synthesize == "twophase" ? SynthesisMode::two_phase : SynthesisMode::on_the_fly;
  config.filter.kind = o.pair_filter == "nonstructural" ? PairFilter::Kind::non_structural : PairFilter::Kind::all;
  config.walk_cap = o.walk_cap;
  config.cdp_mode = cdp_mode(o);
  config.prover = prover_config(o);
  PatternSet seed_patterns = spec.effective_patterns();
  SynthesisResult result = seed_patterns.empty()
                               ? synthesize(spec.trs, config)
                               : synthesize(build_cdps(spec.trs, seed_patterns, config.cdp_mode), config);
  for (const auto& entry : result.log) out << "synthesized " << describe(entry) << "\n";
  for (const auto& w : pattern_warnings(result.patterns, spec.trs)) err << "warning: " << w << "\n";
  out << render_forbidden(result.patterns);
  out << render_proof(result.proof);
  return result.verdict == Verdict::proved ? 0 : 1;
}

inline int run_prove(const CliOptions& o, std::ostream& out, std::ostream& err) {
  InputSpec spec = load(o, err);
  if (!o.synthesize.empty()) return run_synthesis(spec, o, out, err);
  CdpProblem problem = build_cdps(spec.trs, spec.effective_patterns(), cdp_mode(o));
  ProofResult result = prove(problem, prover_config(o));
  out << render_proof(result);
  return result.verdict == Verdict::proved ? 0 : 1;
}

inline int run_cdps(const CliOptions& o, std::ostream& out, std::ostream& err) {
  InputSpec spec = load(o, err);
  CdpProblem problem = build_cdps(spec.trs, spec.effective_patterns(), cdp_mode(o));
  CdpProblem strict = build_cdps(spec.trs, spec.effective_patterns(), CdpMode::strict);
  out << problem.pairs.size() << " pairs (" << o.mode << ")\n";
  for (std::size_t i = 0; i < problem.pairs.size(); ++i) {
    const auto& p = problem.pairs[i];
    out << "  [" << i << "] " << to_string(p) << "  " << origin_name(p.origin());
    bool in_strict = std::any_of(strict.pairs.begin(), strict.pairs.end(),
                                 [&](const ContextualRule& q) { return is_variant(p, q); });
    if (!in_strict) out << "  (compat only)";
    out << "\n";
  }
  return 0;
}

inline int run_graph(const CliOptions& o, std::ostream& out, std::ostream& err) {
  InputSpec spec = load(o, err);
  CdpProblem problem = build_cdps(spec.trs, spec.effective_patterns(), cdp_mode(o));
  auto graph = dependency_graph(problem);
  for (std::size_t i = 0; i < problem.pairs.size(); ++i) out << "[" << i << "] " << to_string(problem.pairs[i]) << "\n";
  out << "edges:\n";
  for (const auto& [from, to] : graph.edges()) out << "  " << from << " -> " << to << "\n";
  out << "sccs:\n";
  for (const auto& component : nontrivial_sccs(graph)) {
    out << "  {";
    for (std::size_t k = 0; k < component.size(); ++k) out << (k ? ", " : "") << component[k];
    out << "}\n";
  }
  return 0;
}

inline bool path_to(const DerivationNode& node, const Term& target, std::vector<const DerivationNode*>& path) {
  path.push_back(&node);
  if (node.normal_form && node.term == target) return true;
  for (const auto& step : node.steps)
    if (path_to(step.child, target, path)) return true;
  path.pop_back();
  return false;
}

inline int run_rewrite(const CliOptions& o, std::ostream& out, std::ostream& err) {
  InputSpec spec = load(o, err);
  if (o.term.empty()) throw std::runtime_error("rewrite needs --term");
  Term t;
  try {
    t = parse_term(o.term, {}, spec.trs.signature());
  } catch (const ParseError& e) {
    throw std::runtime_error(std::string("--term: ") + e.what());
  }
  auto result = explore(spec.trs, spec.effective_patterns(), t, {o.depth, o.width});
  if (!result.reached_normal_form) {
    out << "budget exhausted after " << result.nodes << " nodes, depth " << result.max_length << "\n";
    return 1;
  }
  std::vector<const DerivationNode*> path;
  path_to(result.root, *result.first_normal_form, path);
  for (std::size_t i = 0; i < path.size(); ++i) out << (i ? "  -> " : "     ") << to_string(path[i]->term) << "\n";
  out << "normal form: " << to_string(*result.first_normal_form) << " (" << path.size() - 1 << " steps)\n";
  return 0;
}

}  // namespace detail

/// Command-line entry point. Exit codes: 0 proved, 1 maybe, 2 input error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  detail::CliOptions o;
  CLI::App app{"Termination prover for rewriting with forbidden patterns", "fpcdp"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "input file in TPDB syntax ('-' for stdin)")->required();
    sub->add_option("--mode", o.mode, "CDP construction mode")
        ->check(CLI::IsMember({"strict", "compat"}))
        ->capture_default_str();
  };
  auto add_prover = [&](CLI::App* sub) {
    sub->add_option("--scp-depth", o.scp_depth, "walk length n for SCP_n (n > 1)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}))
        ->capture_default_str();
    sub->add_option("--coeff-max", o.coeff_max, "largest polynomial coefficient")
        ->check(CLI::Range(std::int64_t{0}, std::int64_t{16}))
        ->capture_default_str();
    sub->add_option("--walk-cap", o.walk_cap, "walks examined per pair")->capture_default_str();
    sub->add_option("--timeout", o.timeout, "seconds; checked between processor applications");
    sub->add_option("--pair-filter", o.pair_filter, "pairs targeted by synthesis")
        ->check(CLI::IsMember({"all", "nonstructural"}))
        ->capture_default_str();
  };

  auto* prove_cmd = app.add_subcommand("prove", "prove termination and print the proof trace");
  add_common(prove_cmd);
  add_prover(prove_cmd);
  prove_cmd->add_option("--synthesize", o.synthesize, "synthesize forbidden patterns while proving")
      ->check(CLI::IsMember({"onthefly", "twophase"}));

  auto* synth_cmd = app.add_subcommand("synthesize", "synthesize forbidden patterns");
  add_common(synth_cmd);
  add_prover(synth_cmd);
  std::string synth_mode = "onthefly";
  synth_cmd->add_option("--synthesize", synth_mode, "synthesis mode")
      ->check(CLI::IsMember({"onthefly", "twophase"}))
      ->capture_default_str();

  auto* cdps_cmd = app.add_subcommand("cdps", "print the contextual dependency pairs");
  add_common(cdps_cmd);

  auto* graph_cmd = app.add_subcommand("graph", "print the estimated dependency graph");
  add_common(graph_cmd);

  auto* rewrite_cmd = app.add_subcommand("rewrite", "rewrite a term to a normal form under the patterns");
  add_common(rewrite_cmd);
  rewrite_cmd->add_option("--term", o.term, "start term")->required();
  rewrite_cmd->add_option("--depth", o.depth, "maximal derivation length")->capture_default_str();
  rewrite_cmd->add_option("--width", o.width, "maximal number of tree nodes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (synth_cmd->parsed()) o.synthesize = synth_mode;

  try {
    if (prove_cmd->parsed()) return detail::run_prove(o, out, err);
    if (synth_cmd->parsed()) return detail::run_synthesis(detail::load(o, err), o, out, err);
    if (cdps_cmd->parsed()) return detail::run_cdps(o, out, err);
    if (graph_cmd->parsed()) return detail::run_graph(o, out, err);
    if (rewrite_cmd->parsed()) return detail::run_rewrite(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << o.file << ":" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace fpcdp

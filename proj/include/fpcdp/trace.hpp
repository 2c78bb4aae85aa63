#pragma once

#include <string>
#include <vector>

#include "fpcdp/processors.hpp"

namespace fpcdp {

inline std::string render_pairs(const std::vector<ContextualRule>& pairs, const std::string& indent) {
  std::string out;
  for (const auto& p : pairs) out += indent + to_string(p) + "\n";
  return out;
}

inline std::string render_interpretation(const Interpretation& interpretation) {
  std::string out;
  for (const auto& [f, p] : interpretation.entries()) {
    out += "    [" + f.name;
    if (f.arity > 0) {
      out += "](";
      for (std::size_t i = 1; i <= f.arity; ++i) out += (i > 1 ? "," : "") + std::string("x") + std::to_string(i);
      out += ")";
    } else {
      out += "]";
    }
    out += " = " + to_string(p) + "\n";
  }
  return out;
}

inline std::string render_node(const ProofNode& node, std::size_t number, const std::vector<CdpProblem>& problems) {
  const CdpProblem& input = problems.at(node.input);
  std::string out = "[" + std::to_string(number) + "] ";
  std::string outputs;
  for (auto id : node.outputs) outputs += (outputs.empty() ? "" : ", ") + std::string("#") + std::to_string(id);
  if (outputs.empty()) outputs = "none";

  if (const auto* scc = std::get_if<SccDetails>(&node.details)) {
    out += "SCC on problem #" + std::to_string(node.input) + " (" + std::to_string(input.pairs.size()) +
           " pairs): " + std::to_string(scc->components.size()) + " component(s) -> " + outputs + "\n";
    for (std::size_t i = 0; i < scc->components.size(); ++i) {
      out += "  component " + std::to_string(i + 1) + ":\n";
      std::vector<ContextualRule> pairs;
      for (auto k : scc->components[i]) pairs.push_back(input.pairs[k]);
      out += render_pairs(pairs, "    ");
    }
  } else if (const auto* scp = std::get_if<ScpDetails>(&node.details)) {
    out += "SCP_" + std::to_string(scp->n) + " deletes " + to_string(scp->deleted) + " (problem #" +
           std::to_string(node.input) + " -> " + outputs + ")\n";
    if (scp->deletion.walks.empty())
      out += "  no walk of length " + std::to_string(scp->n) + " starts at this pair\n";
    for (const auto& w : scp->deletion.walks) {
      out += "  blocked walk:";
      for (const auto& p : w.pairs) out += " <" + to_string(p) + ">";
      out += "\n";
      out += "    context " + to_string(w.nested.context) + "\n";
      out += "    nested term " + to_string(w.nested.term) + ", position " + w.nested.position.to_string() + "\n";
      out += "    forbidden by " + to_string(w.pattern) + "\n";
    }
  } else if (const auto* rp = std::get_if<ReductionPairDetails>(&node.details)) {
    out += "reduction pair on problem #" + std::to_string(node.input) + " -> " + outputs + "\n";
    out += "  strictly oriented and deleted:\n" + render_pairs(rp->deleted, "    ");
    out += rp->rules_oriented ? "  rules weakly oriented\n" : "  all right-hand sides token-rooted, rules not needed\n";
    out += "  interpretation:\n" + render_interpretation(rp->interpretation);
  } else if (const auto* syn = std::get_if<SynthesisDetails>(&node.details)) {
    out += "synthesis for " + to_string(syn->target) + " (problem #" + std::to_string(node.input) + " -> " + outputs +
           ")\n";
    for (const auto& note : syn->notes) out += "  " + note + "\n";
    out += "  (FORBIDDEN";
    for (const auto& pi : syn->added) out += " " + to_string(pi);
    out += ")\n";
  }
  return out;
}

/// Human-readable proof tree, one block per processor application.
inline std::string render_trace(const std::vector<ProofNode>& trace, const std::vector<CdpProblem>& problems) {
  if (trace.empty()) return "trivially finite: no pairs\n";
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) out += render_node(trace[i], i + 1, problems);
  return out;
}

inline std::string render_proof(const ProofResult& result) {
  std::string out;
  if (result.trace.empty() && result.verdict == Verdict::proved) {
    out = "trivially finite: no pairs\n";
  } else if (!result.trace.empty()) {
    out = render_trace(result.trace, result.problems);
  }
  for (auto id : result.unresolved) {
    out += "open problem #" + std::to_string(id) + ":\n";
    out += render_pairs(result.problems.at(id).pairs, "    ");
  }
  if (result.timed_out) out += "timeout reached\n";
  out += std::string("verdict: ") + verdict_name(result.verdict) + "\n";
  return out;
}

inline std::string render_forbidden(const PatternSet& patterns) {
  std::string out = "(FORBIDDEN\n";
  for (const auto& pi : patterns) out += "  " + to_string(pi) + "\n";
  return out + ")\n";
}

}  // namespace fpcdp

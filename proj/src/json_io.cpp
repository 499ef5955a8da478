#include "taggedunify/json_io.hpp"

#include "taggedunify/text.hpp"

namespace taggedunify {

using nlohmann::json;

namespace {

json partition_json(const VarPartition& p) {
  json out = json::array();
  for (const auto& block : p) out.push_back(block);
  return out;
}

json optional_json(const std::optional<Substitution>& s) {
  return s ? to_json(*s) : json(nullptr);
}

json stats_json(const PopulationStats& s) {
  return {{"pairs", s.pairs},
          {"combined_unifiable", s.combined},
          {"free_unifiable", s.free},
          {"free_unifiable_unordered", s.free_unordered},
          {"combined_not_free", s.combined_not_free},
          {"combined_not_free_unordered", s.combined_not_free_unordered},
          {"free_not_combined", s.free_not_combined}};
}

json pair_json(const PairResult& r) {
  return {{"lhs", render_term(r.lhs)},
          {"rhs", render_term(r.rhs)},
          {"combined", r.combined},
          {"free", r.free},
          {"free_unordered", r.free_unordered}};
}

}  // namespace

json to_json(const Substitution& s) {
  json out = json::object();
  for (const auto& [v, t] : s.bindings()) out[v] = render_term(t);
  return out;
}

json to_json(const ProblemSet& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(render_problem(p));
  return out;
}

json to_json(const BscaTrace& trace) {
  json branches = json::array();
  for (const auto& b : trace.branches) {
    branches.push_back({{"var_id_partition", partition_json(b.var_id_partition)},
                        {"gamma3", to_json(b.gamma3)},
                        {"gamma41", to_json(b.gamma41)},
                        {"gamma42", to_json(b.gamma42)},
                        {"var_split", {b.split.v1, b.split.v2}},
                        {"beta", to_json(b.split.beta)},
                        {"gamma51", to_json(b.split.gamma51)},
                        {"gamma52", to_json(b.split.gamma52)},
                        {"linear_order", b.split.linear_order},
                        {"sigma1", optional_json(b.split.sigma1)},
                        {"sigma2", optional_json(b.split.sigma2)},
                        {"outcome", b.split.outcome},
                        {"combined", optional_json(b.combined)}});
  }
  return {{"gamma0", to_json(trace.gamma0)},
          {"gamma1", to_json(trace.gamma1)},
          {"gamma2", to_json(trace.gamma2)},
          {"introduced", trace.introduced},
          {"identified_vars", trace.identified_vars},
          {"partitions_explored", trace.partitions_explored},
          {"partitions_pruned", trace.partitions_pruned},
          {"branches_explored", trace.branches_explored},
          {"branches", branches}};
}

json to_json(const DnutReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json witness = json::array({render_term(v.first)});
    if (v.second) witness.push_back(render_term(*v.second));
    json enclosing = json::array();
    for (const auto& t : v.enclosing) enclosing.push_back(render_term(t));
    violations.push_back(
        {{"condition", v.condition}, {"witness", witness}, {"enclosing_terms", enclosing}});
  }
  return {{"satisfied", report.satisfied}, {"violations", violations}};
}

json to_json(const TheoremReport& report, PopulationFilter populations) {
  json pops = json::object();
  if (populations != PopulationFilter::NonSequences)
    pops["non-variables"] = stats_json(report.non_variables);
  if (populations != PopulationFilter::NonVariables)
    pops["non-sequences"] = stats_json(report.non_sequences);
  json cex = json::array();
  for (const auto& r : report.counterexamples) cex.push_back(pair_json(r));
  json cex_unordered = json::array();
  for (const auto& r : report.counterexamples_unordered) cex_unordered.push_back(pair_json(r));
  json premise = json::array();
  for (const auto& r : report.premise_failures) premise.push_back(pair_json(r));
  json incomplete = json::array();
  for (const auto& [a, b] : report.incomplete)
    incomplete.push_back({{"lhs", render_term(a)}, {"rhs", render_term(b)}});
  return {{"samples", report.samples},
          {"dnut_satisfied", report.dnut_satisfied},
          {"populations", pops},
          {"counterexamples", cex},
          {"variants", {{"free-xor-unordered", {{"counterexamples", cex_unordered}}}}},
          {"premise_failures", premise},
          {"incomplete", incomplete}};
}

}  // namespace taggedunify

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "taggedunify/bsca.hpp"
#include "taggedunify/dnut.hpp"
#include "taggedunify/errors.hpp"
#include "taggedunify/json_io.hpp"
#include "taggedunify/oracle.hpp"
#include "taggedunify/text.hpp"
#include "taggedunify/unify_acun.hpp"
#include "taggedunify/unify_std.hpp"

using namespace taggedunify;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNo = 1, kInput = 2, kCaps = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string path = "-";
  std::string inline_text;
};

std::string read_source(const Source& src) {
  if (!src.inline_text.empty()) return src.inline_text;
  if (src.path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(src.path);
  if (!in) throw InputError("cannot read " + src.path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("input", src.path, "Problem file, or - for stdin")->capture_default_str();
  cmd->add_option("-e,--expr", src.inline_text, "Inline input text instead of a file");
}

struct CapFlags {
  std::optional<std::size_t> partition_vars;
  std::optional<std::size_t> branches;

  void add(CLI::App* cmd) {
    cmd->add_option("--max-partition-vars", partition_vars,
                    "Most variables entering variable identification")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-branches", branches, "Most identification/split branches")
        ->check(CLI::PositiveNumber);
  }

  BscaOptions options() const {
    BscaOptions o = options_from_env();
    if (partition_vars) o.max_partition_vars = *partition_vars;
    if (branches) o.max_branches = *branches;
    return o;
  }
};

// ------------------------------------------------------------------ unify

struct UnifyArgs {
  Source src;
  std::string theory;
  bool explain = false;
  std::string format = "text";
  CapFlags caps;
};

Theory select_theory(const UnifyArgs& args, const ProblemFile& file) {
  if (!args.theory.empty()) return *parse_theory_name(args.theory);
  std::optional<Theory> chosen;
  for (const auto& e : file.entries) {
    if (chosen && *chosen != e.theory)
      throw InputError("entries use different theories; pass --theory");
    chosen = e.theory;
  }
  return chosen.value_or(file.default_theory.value_or(kFallbackTheory));
}

int cmd_unify(const UnifyArgs& args) {
  const ProblemFile file = parse_problem_file(read_source(args.src));
  const Theory theory = select_theory(args, file);
  const ProblemSet problems = file.problems();

  std::vector<Substitution> unifiers;
  std::optional<BscaTrace> trace;
  switch (theory) {
    case Theory::Std:
      if (auto s = unify_std(problems)) unifiers.push_back(*s);
      break;
    case Theory::Acun:
      unifiers = unify_acun(problems);
      break;
    case Theory::FreeXor:
      if (auto s = unify_free(problems)) unifiers.push_back(*s);
      break;
    case Theory::Combined: {
      BscaOptions options = args.caps.options();
      options.record_trace = args.explain;
      auto result = unify_combined(problems, options);
      unifiers = std::move(result.unifiers);
      if (args.explain) trace = std::move(result.trace);
      break;
    }
  }

  if (args.format == "json") {
    for (const auto& u : unifiers) std::cout << json{{"unifier", to_json(u)}}.dump() << '\n';
    std::cout << json{{"theory", std::string(theory_name(theory))},
                      {"unifiable", !unifiers.empty()},
                      {"count", unifiers.size()}}
                     .dump()
              << '\n';
    if (trace) std::cout << json{{"trace", to_json(*trace)}}.dump() << '\n';
  } else {
    for (const auto& u : unifiers) std::cout << render_substitution(u) << '\n';
    if (unifiers.empty()) std::cout << "not unifiable\n";
    if (trace) std::cout << to_json(*trace).dump(2) << '\n';
  }
  return unifiers.empty() ? kNo : kOk;
}

// ------------------------------------------------------------------ dnut

struct DnutArgs {
  Source src;
  std::string format = "text";
};

std::string describe(const DnutViolation& v) {
  std::string out = "condition " + std::to_string(v.condition) + ": ";
  if (v.condition == 3) {
    out += "unity element in " + render_term(v.enclosing.front());
    return out;
  }
  out += render_term(v.first) + " unifies with " + render_term(*v.second) + " in ";
  for (std::size_t i = 0; i < v.enclosing.size(); ++i) {
    if (i) out += " and ";
    out += render_term(v.enclosing[i]);
  }
  return out;
}

int cmd_dnut_check(const DnutArgs& args) {
  const ProblemFile file = parse_problem_file(read_source(args.src));
  bool all = true;
  json sets = json::array();
  for (const auto& set : file.sets) {
    const DnutReport report = dnut_check(set.terms);
    all = all && report.satisfied;
    if (args.format == "json") {
      json j = to_json(report);
      j["name"] = set.name;
      sets.push_back(j);
    } else {
      std::cout << "set " << set.name << ": "
                << (report.satisfied ? "satisfies DNUT" : "violates DNUT") << '\n';
      for (const auto& v : report.violations) std::cout << "  " << describe(v) << '\n';
    }
  }
  if (args.format == "json") std::cout << json{{"satisfied", all}, {"sets", sets}}.dump(2) << '\n';
  return all ? kOk : kNo;
}

int cmd_dnut_tag(const DnutArgs& args) {
  ProblemFile file = parse_problem_file(read_source(args.src));
  for (auto& set : file.sets) set.terms = dnut_tag(set.terms);
  std::cout << render_problem_file(file);
  return kOk;
}

// ------------------------------------------------------------------ theorem

struct TheoremArgs {
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
  std::size_t depth = 3;
  std::string population = "both";
  bool untagged = false;
  CapFlags caps;
};

int cmd_prove_theorem(const TheoremArgs& args) {
  GenConfig cfg;
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  cfg.max_depth = args.depth;
  PopulationFilter filter = PopulationFilter::Both;
  if (args.population == "non-variables" || args.population == "with-sequences") {
    filter = PopulationFilter::NonVariables;
  } else if (args.population == "non-sequences") {
    filter = PopulationFilter::NonSequences;
  }
  const TheoremReport report = run_theorem_harness(cfg, !args.untagged, args.caps.options());
  json out = to_json(report, filter);
  out["seed"] = args.seed;
  out["depth"] = args.depth;
  out["generator"] = args.untagged ? "untagged" : "dnut-tagged";
  std::cout << out.dump(2) << '\n';
  if (!report.incomplete.empty()) return kCaps;
  return report.counterexamples.empty() ? kOk : kNo;
}

// ------------------------------------------------------------------ parse

int cmd_parse(const Source& src) {
  std::cout << render_problem_file(parse_problem_file(read_source(src)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unification modulo STD, xor and their combination; DNUT tagging."};
  app.require_subcommand(1);

  UnifyArgs unify;
  auto* unify_cmd = app.add_subcommand("unify", "Print the unifiers of a problem set");
  add_source(unify_cmd, unify.src);
  unify_cmd->add_option("-t,--theory", unify.theory, "std, acun, free-xor or combined")
      ->check(CLI::IsMember({"std", "acun", "free-xor", "combined"}));
  unify_cmd->add_flag("--explain", unify.explain, "Dump the combination trace as JSON");
  unify_cmd->add_option("--format", unify.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  unify.caps.add(unify_cmd);

  DnutArgs dnut;
  auto* dnut_cmd = app.add_subcommand("dnut", "Check or establish the DNUT condition");
  dnut_cmd->require_subcommand(1);
  auto* check_cmd = dnut_cmd->add_subcommand("check", "Check every set block");
  auto* tag_cmd = dnut_cmd->add_subcommand("tag", "Tag every set block");
  for (auto* c : {check_cmd, tag_cmd}) add_source(c, dnut.src);
  check_cmd->add_option("--format", dnut.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  TheoremArgs theorem;
  auto* theorem_cmd =
      app.add_subcommand("prove-theorem", "Compare combined and free unifiability on protocols");
  theorem_cmd->add_option("--samples", theorem.samples)->capture_default_str();
  theorem_cmd->add_option("--seed", theorem.seed)->capture_default_str();
  theorem_cmd->add_option("--depth", theorem.depth)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  theorem_cmd->add_option("--population", theorem.population)
      ->check(CLI::IsMember({"both", "non-variables", "with-sequences", "non-sequences"}))
      ->capture_default_str();
  theorem_cmd->add_flag("--untagged", theorem.untagged,
                        "Draw raw protocols instead of DNUT-tagged ones");
  theorem.caps.add(theorem_cmd);

  Source parse_src;
  auto* parse_cmd = app.add_subcommand("parse", "Parse and re-render a problem file");
  add_source(parse_cmd, parse_src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (unify_cmd->parsed()) return cmd_unify(unify);
    if (check_cmd->parsed()) return cmd_dnut_check(dnut);
    if (tag_cmd->parsed()) return cmd_dnut_tag(dnut);
    if (theorem_cmd->parsed()) return cmd_prove_theorem(theorem);
    if (parse_cmd->parsed()) return cmd_parse(parse_src);
  } catch (const ChoiceSpaceExceeded& e) {
    std::cerr << "error: choice space exceeded: " << e.what() << '\n';
    return kCaps;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const ImpureTerm& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}

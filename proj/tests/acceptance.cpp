// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "taggedunify/bsca.hpp"
#include "taggedunify/dnut.hpp"
#include "taggedunify/oracle.hpp"
#include "taggedunify/text.hpp"
#include "taggedunify/unify_acun.hpp"
#include "taggedunify/unify_std.hpp"

using namespace taggedunify;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string golden(const std::string& name) { return std::string(TU_GOLDEN_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  const std::string cmd = std::string("\"") + TU_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

bool acun_equal_sides(const Substitution& s, const ProblemSet& ps) {
  for (const auto& p : ps) {
    if (acun_normal_form(s.apply(p.lhs)) != acun_normal_form(s.apply(p.rhs))) return false;
  }
  return true;
}

const char* kRunning = "penc([1, n_a], pk(B)) ~? xor(penc([1, N_B], pk(a)), [2, A], [2, b])";

// ------------------------------------------------------------------ 1

Outcome golden_steps() {
  Outcome o;
  const auto rename = parse_substitution("{ W/_V1, X/_V2, Y/_V3, Z/_V4 }");
  const ProblemSet gamma0 = parse_problem_file(kRunning).problems();
  const Purified p1 = purify_terms(gamma0);
  o.require(rename.apply(p1.problems) == parse_problem_file("W ~? penc([1, n_a], pk(B))\n"
                                                            "X ~? penc([1, N_B], pk(a))\n"
                                                            "Y ~? [2, A]\n"
                                                            "Z ~? [2, b]\n"
                                                            "W ~? xor(X, Y, Z)")
                                             .problems(),
            "purified set differs");
  const ProblemSet gamma2 = purify_problems(p1.problems).problems;
  o.require(gamma2 == p1.problems, "problem purification changed the set");

  const VarPartition yz{{"A"}, {"B"}, {"N_B"}, {"_V1"}, {"_V2"}, {"_V3", "_V4"}};
  const auto ids = variable_identifications(gamma2);
  o.require(std::any_of(ids.begin(), ids.end(), [&](const auto& id) { return id.partition == yz; }),
            "identification {Y, Z} not enumerated");
  const auto [g41, g42] = split_problems(apply_partition(gamma2, yz));
  o.require(rename.apply(g41) == parse_problem_file("W ~? penc([1, n_a], pk(B))\n"
                                                    "X ~? penc([1, N_B], pk(a))\n"
                                                    "Y ~? [2, A]\n"
                                                    "Y ~? [2, b]")
                                     .problems(),
            "STD split differs");
  o.require(rename.apply(g42) == parse_problem_file("W ~? xor(X, Y, Y)").problems(),
            "xor split differs");

  const SplitBranch b = solve_split(g41, g42, {"A", "B", "N_B", "_V1", "_V2", "_V3"}, {});
  o.require(b.beta == parse_substitution("{ v1/_V1, v2/_V2, v3/_V3 }"),
            "beta is " + render_substitution(b.beta));
  o.require(b.gamma52 == parse_problem_file("v1 ~? xor(v2, v3, v3)").problems(),
            "xor component differs");
  o.require(!b.sigma2, "xor component unexpectedly solvable");
  o.detail = o.ok ? "purification, split and beta {v1/W, v2/X, v3/Y} match" : o.detail;
  return o;
}

// ------------------------------------------------------------------ 2

Outcome end_to_end() {
  Outcome o;
  const auto t0 = Clock::now();
  const RunResult r = run_cli("unify --theory combined --format json \"" +
                              golden("running_example.tu") + "\"");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(r.status == 0, "exit status " + std::to_string(r.status));
  const ProblemSet gamma = parse_problem_file(kRunning).problems();
  std::vector<Substitution> unifiers;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) {
    const auto j = nlohmann::json::parse(line);
    if (!j.contains("unifier")) continue;
    Substitution s;
    for (const auto& [v, t] : j["unifier"].items()) s.bind(v, parse_term(t.get<std::string>()));
    unifiers.push_back(s);
  }
  o.require(!unifiers.empty(), "no unifier printed");
  for (const auto& s : unifiers)
    o.require(acun_equal_sides(s, gamma), "unifier " + render_substitution(s) + " is unsound");
  const auto want = parse_substitution("{ b/A, a/B, n_a/N_B }");
  o.require(std::find(unifiers.begin(), unifiers.end(), want) != unifiers.end(),
            "{ b/A, a/B, n_a/N_B } missing");
  o.require(ground_unifiable(gamma, Theory::Combined), "ground oracle finds no unifier");
  o.require(secs < 10, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = std::to_string(unifiers.size()) + " unifier(s), ground oracle agrees";
  return o;
}

// ------------------------------------------------------------------ 3, 4

Outcome theorem_tagged() {
  Outcome o;
  GenConfig cfg;
  cfg.samples = 10'000;
  cfg.seed = 1;
  const TheoremReport r = run_theorem_harness(cfg, true);
  o.require(r.dnut_satisfied == r.samples, "a generated set violates DNUT");
  o.require(r.incomplete.empty(), std::to_string(r.incomplete.size()) + " pairs hit a cap");
  o.require(r.counterexamples.empty(),
            "counterexample " + (r.counterexamples.empty()
                                     ? std::string()
                                     : render_term(r.counterexamples[0].lhs) + " ~? " +
                                           render_term(r.counterexamples[0].rhs)));
  if (o.ok) {
    o.detail = std::to_string(r.samples) + " protocols, " +
               std::to_string(r.non_variables.pairs) + " non-variable pairs (" +
               std::to_string(r.non_variables.combined) + " combined-unifiable), " +
               std::to_string(r.non_sequences.pairs) + " non-sequence pairs, 0 counterexamples";
  }
  return o;
}

Outcome theorem_untagged() {
  Outcome o;
  TheoremReport direct;
  check_theorem({parse_term("xor(a, X)"), parse_term("xor(b, Y)")}, direct);
  o.require(direct.premise_failures.size() == 1, "xor(a, X) / xor(b, Y) not flagged");
  GenConfig cfg;
  cfg.samples = 100;
  cfg.seed = 1;
  const TheoremReport r = run_theorem_harness(cfg, false);
  o.require(!r.premise_failures.empty(), "no combined-but-not-free pair among 100 sets");
  if (o.ok) {
    o.detail = std::to_string(r.premise_failures.size()) + " pairs over " +
               std::to_string(r.samples - r.dnut_satisfied) + " DNUT-violating sets, e.g. " +
               render_term(r.premise_failures[0].lhs) + " ~? " +
               render_term(r.premise_failures[0].rhs);
  }
  return o;
}

// ------------------------------------------------------------------ 5

Outcome dnut_golden() {
  Outcome o;
  const auto original = parse_problem_file(slurp(golden("protocol_original.tu"))).sets.at(0).terms;
  const auto tagged = parse_problem_file(slurp(golden("protocol_tagged.tu"))).sets.at(0).terms;
  const auto before = dnut_check(original);
  o.require(!before.satisfied && !before.violations.empty(), "original column passes");
  for (const auto& v : before.violations) {
    if (v.condition != 3) o.require(std_unifiable(v.first, *v.second), "bogus witness");
  }
  o.require(dnut_check(tagged).satisfied, "tagged column fails");
  const auto ours = dnut_tag(original);
  o.require(dnut_check(ours).satisfied, "dnut_tag output fails");

  // Our numbering of message four differs; the shapes must match under a
  // one-to-one tag renaming.
  std::map<std::vector<unsigned>, std::vector<unsigned>> fwd, back;
  std::function<bool(const Term&, const Term&)> same = [&](const Term& a, const Term& b) {
    if (a.kind() == Kind::Tag && b.kind() == Kind::Tag) {
      const auto f = fwd.emplace(a.path(), b.path()).first;
      const auto g = back.emplace(b.path(), a.path()).first;
      return f->second == b.path() && g->second == a.path();
    }
    if (a.kind() != b.kind() || a.name() != b.name() || a.args().size() != b.args().size())
      return false;
    for (std::size_t i = 0; i < a.args().size(); ++i) {
      if (!same(a.args()[i], b.args()[i])) return false;
    }
    return true;
  };
  o.require(ours.size() == tagged.size(), "message count differs");
  for (std::size_t i = 0; i < ours.size() && i < tagged.size(); ++i)
    o.require(same(ours[i], tagged[i]), "message " + std::to_string(i + 1) + " not a renumbering");
  if (o.ok) {
    std::size_t renamed = 0;
    for (const auto& [a, b] : fwd) renamed += a != b;
    o.detail = std::to_string(before.violations.size()) + " witnesses on the original; " +
               std::to_string(renamed) + " tags renumbered";
  }
  return o;
}

// ------------------------------------------------------------------ 6

Outcome agreement() {
  Outcome o;
  GenConfig cfg;
  std::mt19937_64 rng(2024);
  std::size_t yes[3] = {0, 0, 0};
  const ProblemFamily families[] = {ProblemFamily::Std, ProblemFamily::Acun,
                                    ProblemFamily::Combined};
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i < 1000 && o.ok; ++i) {
      const ProblemSet ps = gen_problem(rng, cfg, families[f]);
      bool solver = false;
      bool oracle = false;
      switch (families[f]) {
        case ProblemFamily::Std:
          solver = unify_std(ps).has_value();
          oracle = ground_unifiable(ps, Theory::Std);
          break;
        case ProblemFamily::Acun:
          solver = !unify_acun(ps).empty();
          oracle = ground_unifiable(ps, Theory::Acun);
          break;
        case ProblemFamily::Combined:
          solver = combined_unifiable(ps);
          oracle = ground_unifiable(ps, Theory::Combined);
          break;
      }
      yes[f] += oracle;
      std::string shown;
      for (const auto& p : ps) shown += render_problem(p) + "; ";
      o.require(solver == oracle, "disagreement on " + shown);
    }
  }
  if (o.ok) {
    o.detail = "3 x 1000 problems, unifiable: std " + std::to_string(yes[0]) + ", xor " +
               std::to_string(yes[1]) + ", combined " + std::to_string(yes[2]);
  }
  return o;
}

// ------------------------------------------------------------------ 7

Term shuffled(const Term& t, std::mt19937_64& rng) {
  if (t.is_atomic()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(shuffled(a, rng));
  if (t.is_xor()) std::shuffle(args.begin(), args.end(), rng);
  return t.with_args(std::move(args));
}

Term random_term(std::mt19937_64& rng, std::size_t depth) {
  static const char* atoms[] = {"a", "b", "c", "X", "Y", "0", "1", "2.3"};
  if (depth == 0 || rng() % 10 < 3) return parse_term(atoms[rng() % 8]);
  auto sub = [&] { return random_term(rng, depth - 1); };
  switch (rng() % 5) {
    case 0: return Term::seq({sub(), sub()});
    case 1: return Term::penc(sub(), sub());
    case 2: return Term::pk(sub());
    default: {
      std::vector<Term> items;
      for (std::size_t i = 0, n = 2 + rng() % 3; i < n; ++i) items.push_back(sub());
      return Term::xor_of(items);
    }
  }
}

Outcome acun_algebra() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10'000 && o.ok; ++i) {
    const Term t = random_term(rng, 4);
    const Term nf = acun_normal_form(t);
    const std::string shown = render_term(t);
    o.require(acun_normal_form(nf) == nf, "not idempotent on " + shown);
    o.require(acun_normal_form(Term::xor_of({t, t})).is_zero(), "t + t not 0 for " + shown);
    o.require(acun_normal_form(Term::xor_of({t, Term::zero()})) == nf, "t + 0 not t for " + shown);
    o.require(acun_normal_form(shuffled(t, rng)) == nf, "order-sensitive on " + shown);
  }
  if (o.ok) o.detail = "10000 terms, 4 laws each";
  return o;
}

// ------------------------------------------------------------------ 8

Outcome he_boundary() {
  Outcome o;
  const RunResult r = run_cli("unify \"" + golden("he_boundary.tu") + "\"");
  o.require(r.status == 1, "exit status " + std::to_string(r.status));
  o.require(r.out.find("not unifiable") != std::string::npos, "output: " + r.out);
  if (o.ok) o.detail = "not unifiable, exit 1";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 for none
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "golden purification, split and beta", 1, golden_steps},
      {2, "end-to-end unify on the running example", 10, end_to_end},
      {3, "theorem harness, 10^4 tagged protocols", 600, theorem_tagged},
      {4, "negative control, untagged protocols", 0, theorem_untagged},
      {5, "DNUT golden table", 1, dnut_golden},
      {6, "solver/oracle agreement", 0, agreement},
      {7, "xor normal-form laws", 0, acun_algebra},
      {8, "homomorphic-encryption boundary", 0, he_boundary},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (o.ok && c.limit > 0 && secs >= c.limit) {
      o.ok = false;
      o.detail = "over the " + std::to_string(c.limit) + " s budget";
    }
    failed += !o.ok;
    std::printf("%s %d %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

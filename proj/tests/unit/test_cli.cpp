#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

/// Runs the CLI through the shell; `args` is spliced in verbatim.
Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + TU_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string golden(const std::string& name) {
  return "\"" + std::string(TU_GOLDEN_DIR) + "/" + name + "\"";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("unify on golden inputs") {
  const Run running = cli("unify " + golden("running_example.tu"));
  CHECK(running.status == 0);
  CHECK(contains(running.out, "{ b/A, a/B, n_a/N_B }"));

  const Run he = cli("unify " + golden("he_boundary.tu"));
  CHECK(he.status == 1);
  CHECK(contains(he.out, "not unifiable"));
}

TEST_CASE("unify with each theory") {
  CHECK(cli("unify -t std -e '[1, X] ~? [1, a]'").out == "{ a/X }\n");
  CHECK(cli("unify -t std -e '[1, a] ~? [2, b]'").status == 1);
  CHECK(cli("unify -t acun -e 'xor(X, a) ~? b'").out == "{ xor(a, b)/X }\n");
  CHECK(cli("unify -t free-xor -e 'xor(a, X) ~? xor(b, Y)'").status == 1);
  CHECK(cli("unify -t combined -e 'xor(a, X) ~? xor(b, Y)'").out == "{ xor(Y, a, b)/X }\n");
  CHECK(cli("unify -e 'a ~? a @std'").out == "{ }\n");
  // Piped input.
  CHECK(cli("unify - < " + golden("he_boundary.tu")).status == 1);
}

TEST_CASE("json output is one object per line") {
  const Run r = cli("unify --format json " + golden("running_example.tu"));
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(nlohmann::json::parse(line)["unifier"]["A"] == "b");
  REQUIRE(std::getline(lines, line));
  const auto summary = nlohmann::json::parse(line);
  CHECK(summary["unifiable"] == true);
  CHECK(summary["count"] == 1);
  CHECK(summary["theory"] == "combined");
  CHECK_FALSE(std::getline(lines, line));

  const Run ex = cli("unify --explain --format json " + golden("running_example.tu"));
  std::istringstream all(ex.out);
  std::string last;
  while (std::getline(all, line)) last = line;
  const auto trace = nlohmann::json::parse(last)["trace"];
  CHECK(trace["gamma1"].size() == 5);
  CHECK(trace["introduced"].size() == 4);
}

TEST_CASE("input errors exit with 2") {
  CHECK(cli("unify -e 'penc(a ~? b'").status == 2);
  CHECK(cli("unify /nonexistent/file.tu").status == 2);
  CHECK(cli("unify -e 'pk(X) ~? xor(a, X)' -t acun").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("unify -t nonsense -e 'a ~? a'").status == 2);
  // Entries of two theories need an explicit choice.
  const std::string mixed = "printf 'a ~? a @std\\na ~? a @acun\\n' | ";
  CHECK(cli("unify -", mixed).status == 2);
  CHECK(cli("unify -t std -", mixed).status == 0);
}

TEST_CASE("caps exit with 3") {
  CHECK(cli("unify --max-partition-vars 2 " + golden("running_example.tu")).status == 3);
  CHECK(cli("unify " + golden("running_example.tu"), "TAGGEDUNIFY_CAPS=partition_vars=2").status ==
        3);
  CHECK(cli("unify --max-branches 1 " + golden("running_example.tu")).status == 3);
}

TEST_CASE("dnut check and tag") {
  const Run original = cli("dnut check " + golden("protocol_original.tu"));
  CHECK(original.status == 1);
  CHECK(contains(original.out, "set original: violates DNUT"));
  CHECK(contains(original.out, "condition 1: A unifies with N_B"));
  CHECK(cli("dnut check " + golden("protocol_tagged.tu")).status == 0);

  const Run tagged = cli("dnut tag " + golden("protocol_original.tu"));
  CHECK(tagged.status == 0);
  CHECK(contains(tagged.out, "[2.1, N_B, B]"));
  CHECK(cli("dnut tag " + golden("protocol_original.tu") + " | \"" + TU_CLI_PATH +
            "\" dnut check -")
            .status == 0);

  const Run json = cli("dnut check --format json " + golden("protocol_original.tu"));
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j["satisfied"] == false);
  CHECK(j["sets"][0]["name"] == "original");

  CHECK(cli("dnut check -e 'set empty { }'").status == 0);
  const Run unity = cli("dnut check -e 'set u { xor(a, 0) }'");
  CHECK(unity.status == 1);
  CHECK(contains(unity.out, "condition 3: unity element in xor(a, 0)"));
  CHECK(cli("dnut check -e 'set broken { pk(a'").status == 2);
}

TEST_CASE("prove-theorem") {
  const Run a = cli("prove-theorem --samples 40 --seed 9");
  const Run b = cli("prove-theorem --samples 40 --seed 9");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["samples"] == 40);
  CHECK(j["counterexamples"].empty());
  CHECK(j["populations"].contains("non-variables"));
  CHECK(j["populations"].contains("non-sequences"));
  CHECK(j["variants"]["free-xor-unordered"]["counterexamples"].empty());

  const auto only = nlohmann::json::parse(cli("prove-theorem --samples 5 --population non-sequences").out);
  CHECK(only["populations"].size() == 1);
  CHECK(only["populations"].contains("non-sequences"));

  const Run untagged = cli("prove-theorem --samples 100 --untagged");
  CHECK(untagged.status == 0);
  CHECK_FALSE(nlohmann::json::parse(untagged.out)["premise_failures"].empty());
}

TEST_CASE("parse re-renders") {
  const Run r = cli("parse -e 'a + X ~? [1.2, b]'");
  CHECK(r.status == 0);
  CHECK(r.out == "xor(a, X) ~? [1.2, b] @combined\n");
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "taggedunify/bsca.hpp"
#include "taggedunify/term.hpp"

namespace taggedunify {

struct GenConfig {
  std::size_t max_depth = 3;
  std::size_t max_xor_width = 3;
  std::size_t var_pool = 4;
  std::size_t atom_pool = 3;
  std::uint64_t seed = 1;
  std::size_t samples = 1;
  /// Most search nodes the brute-force oracle may visit.
  std::size_t oracle_ceiling = 50'000;
};

/// Brute force over triangular candidate bindings (see docs/format.md for
/// the candidate space per theory). Throws BoundExceeded when the search
/// visits more nodes than `bound.oracle_ceiling`.
bool ground_unifiable(const ProblemSet& problems, Theory theory, const GenConfig& bound = {});

/// Xor as an uninterpreted symbol: arguments are matched by position.
bool free_unifiable(const ProblemSet& problems);
/// Xor as a free symbol whose arguments may be matched in any order.
bool free_unifiable_unordered(const ProblemSet& problems);

enum class ProblemFamily { Std, Acun, Combined };

/// Random term over the configured pools. `allow_xor` / `allow_std` select
/// the operators used.
Term gen_term(std::mt19937_64& rng, const GenConfig& cfg, std::size_t depth, bool allow_std,
              bool allow_xor);

/// One to two problems of the family, re-sampled until the oracle
/// search stays under the ceiling and the combination choice space under the
/// default caps.
ProblemSet gen_problem(std::mt19937_64& rng, const GenConfig& cfg, ProblemFamily family);

/// Untagged messages: xor interms may be bare variables or constants.
std::vector<Term> gen_raw_protocol(std::mt19937_64& rng, const GenConfig& cfg);

/// Tagged messages plus variants where xor subterms, or subterms outside any
/// xor, are abstracted into fresh variables. Always DNUT-satisfying.
std::vector<Term> gen_dnut_protocol(std::mt19937_64& rng, const GenConfig& cfg);

enum class Population { NonVariables, NonSequences };

struct PairResult {
  Term lhs;
  Term rhs;
  bool combined = false;
  bool free = false;
  bool free_unordered = false;
};

struct PopulationStats {
  std::size_t pairs = 0;
  std::size_t combined = 0;
  std::size_t free = 0;
  std::size_t free_unordered = 0;
  /// combined and not free: counterexamples when DNUT holds.
  std::size_t combined_not_free = 0;
  std::size_t combined_not_free_unordered = 0;
  std::size_t free_not_combined = 0;
};

struct TheoremReport {
  std::size_t samples = 0;
  std::size_t dnut_satisfied = 0;
  PopulationStats non_variables;
  PopulationStats non_sequences;
  /// Shrunk; only pairs from DNUT-satisfying sets.
  std::vector<PairResult> counterexamples;
  std::vector<PairResult> counterexamples_unordered;
  /// combined and not free from sets that violate DNUT.
  std::vector<PairResult> premise_failures;
  /// Pairs whose combination run hit a cap.
  std::vector<std::pair<Term, Term>> incomplete;
};

/// Checks every pair of distinct non-variable members of `terms` and adds
/// the outcome to `report`.
void check_theorem(const std::vector<Term>& terms, TheoremReport& report,
                   const BscaOptions& options = {});

/// Greedy shrinking of a pair while combined-and-not-free persists.
std::pair<Term, Term> shrink_counterexample(const Term& lhs, const Term& rhs,
                                            const BscaOptions& options = {});

/// Runs `cfg.samples` protocols drawn from `cfg.seed`.
TheoremReport run_theorem_harness(const GenConfig& cfg, bool tagged,
                                  const BscaOptions& options = {});

/// For a unifier of pure xor problems: after applying it and flattening, every
/// non-Zero interm STD-unifies with another interm of the same problem.
bool interm_pairing_holds(const ProblemSet& problems, const Substitution& sigma);

}  // namespace taggedunify

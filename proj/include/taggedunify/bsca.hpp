#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "taggedunify/substitution.hpp"
#include "taggedunify/term.hpp"

namespace taggedunify {

/// Enumeration caps and switches for the combination algorithm.
struct BscaOptions {
  /// Most variables allowed to enter variable identification (Bell-number
  /// growth); beyond it ChoiceSpaceExceeded is thrown.
  std::size_t max_partition_vars = 9;
  /// Most (identification, split) branches solved per run.
  std::size_t max_branches = 2'000'000;
  /// Identify and split only variables occurring in problems of both
  /// theories; the rest stay with the theory they occur in.
  bool shared_only = true;
  /// Skip identification prefixes whose relaxed component problems are
  /// already unsolvable.
  bool prune = true;
  /// Stop after the first combined unifier.
  bool stop_at_first = false;
  bool record_trace = false;
};

/// Reads overrides such as `partition_vars=8,branches=100000` from the
/// TAGGEDUNIFY_CAPS environment variable.
BscaOptions options_from_env(BscaOptions base = {});

using VarPartition = std::vector<std::vector<std::string>>;

struct Purified {
  ProblemSet problems;
  std::vector<std::string> introduced;
};

/// Replaces alien subterms by fresh variables with defining problems. A
/// problem whose two sides are headed by different theories is split
/// through a fresh variable as well. Constants and tags belong to STD here,
/// so one standing directly under an xor is alien too.
Purified purify_terms(const ProblemSet& problems);

/// Splits every problem whose sides belong to different theories.
Purified purify_problems(const ProblemSet& problems);

/// True for problems routed to the xor theory: one side is an xor or Zero.
bool is_acun_problem(const Problem& p);

struct VarIdentification {
  VarPartition partition;
  ProblemSet gamma3;
};

/// All partitions of Vars(gamma2), each class replaced by its least name.
/// Throws ChoiceSpaceExceeded above `max_vars` variables.
std::vector<VarIdentification> variable_identifications(const ProblemSet& gamma2,
                                                        std::size_t max_vars = 9);
ProblemSet apply_partition(const ProblemSet& problems, const VarPartition& partition);

/// (STD problems, xor problems); variable-variable problems go to STD.
std::pair<ProblemSet, ProblemSet> split_problems(const ProblemSet& gamma3);

/// One choice of {V1, V2} with its component problems and unifiers. V1 are
/// the variables solved by the STD side (constants on the xor side).
struct SplitBranch {
  std::vector<std::string> v1;
  std::vector<std::string> v2;
  /// Fresh constant per variable: binds X to its constant.
  Substitution beta;
  ProblemSet gamma51;
  ProblemSet gamma52;
  std::vector<std::string> linear_order;
  std::optional<Substitution> sigma1;
  std::optional<Substitution> sigma2;
  std::string outcome;
};

/// Builds and solves the component problems for one split. The linear order
/// is searched so that both component unifiers respect it.
SplitBranch solve_split(const ProblemSet& gamma41, const ProblemSet& gamma42,
                        const std::vector<std::string>& v1, const std::vector<std::string>& v2,
                        const std::vector<std::string>& pivot_priority = {});

/// Every two-block split of Vars(gamma41 u gamma42).
std::vector<SplitBranch> solve_systems(const ProblemSet& gamma41, const ProblemSet& gamma42,
                                       std::size_t max_vars = 12);

/// sigma = sigma1 (.) sigma2: each variable takes its own theory's binding
/// with the fresh constants of beta replaced by the combined bindings of
/// their variables. Empty when the replacement cycles.
std::optional<Substitution> combine_unifiers(const Substitution& sigma1,
                                             const Substitution& sigma2,
                                             const std::vector<std::string>& v1,
                                             const std::vector<std::string>& v2,
                                             const Substitution& beta,
                                             const std::vector<std::string>& linear_order);

struct BscaBranch {
  VarPartition var_id_partition;
  ProblemSet gamma3;
  ProblemSet gamma41;
  ProblemSet gamma42;
  SplitBranch split;
  std::optional<Substitution> combined;
};

struct BscaTrace {
  ProblemSet gamma0;
  ProblemSet gamma1;
  ProblemSet gamma2;
  std::vector<std::string> introduced;
  std::vector<std::string> identified_vars;
  std::size_t partitions_explored = 0;
  std::size_t partitions_pruned = 0;
  std::size_t branches_explored = 0;
  /// Only filled when BscaOptions::record_trace is set.
  std::vector<BscaBranch> branches;
};

struct CombinedResult {
  /// Distinct unifiers over Vars(gamma0), canonical modulo fresh names.
  std::vector<Substitution> unifiers;
  BscaTrace trace;
};

CombinedResult unify_combined(const ProblemSet& problems, const BscaOptions& options = {});
bool combined_unifiable(const ProblemSet& problems, BscaOptions options = {});

}  // namespace taggedunify

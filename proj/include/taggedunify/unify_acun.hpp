#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taggedunify/substitution.hpp"
#include "taggedunify/term.hpp"

namespace taggedunify {

/// One GF(2) equation per problem: the sum of both sides' interms is zero.
struct Gf2System {
  std::vector<Term> atoms;        // constants and tags, sorted
  std::vector<std::string> vars;  // pivot-priority order
  /// rows[i].vars[j] is the parity of vars[j] in problem i; likewise atoms.
  struct Row {
    std::vector<bool> vars;
    std::vector<bool> atoms;
    friend bool operator==(const Row&, const Row&) = default;
  };
  std::vector<Row> rows;
};

/// Throws ImpureTerm if an interm (after flattening) is not a variable,
/// constant, tag or Zero. Variables listed in `pivot_priority` come first in
/// `vars`, the rest follow in name order.
Gf2System build_gf2_system(const ProblemSet& problems,
                           const std::vector<std::string>& pivot_priority = {});

/// Source of fresh parameter variables `_f1`, `_f2`, ... avoiding given names.
class FreshVars {
 public:
  explicit FreshVars(std::set<std::string> avoid, std::string prefix = "_f")
      : avoid_(std::move(avoid)), prefix_(std::move(prefix)) {}
  std::string next();

 private:
  std::set<std::string> avoid_;
  std::string prefix_;
  std::size_t counter_ = 0;
};

/// A complete set of most general ACUN unifiers: empty when not unifiable,
/// otherwise a single mgu.
std::vector<Substitution> unify_acun(const ProblemSet& problems);

/// ACUN unification with constant restrictions: for every atom `c`, the
/// variables in `forbidden.at(c)` must not have `c` in their binding.
/// Parameters introduced for the solution space come from `fresh`.
std::optional<Substitution> unify_acun_restricted(
    const ProblemSet& problems, const std::map<Term, std::set<std::string>>& forbidden,
    const std::vector<std::string>& pivot_priority, FreshVars& fresh);

/// Whether the atom `c` can be kept out of the bindings of `forbidden` while
/// solving the system. Cheaper than a full restricted solve.
bool acun_atom_admissible(const Gf2System& system, std::size_t atom_index,
                          const std::set<std::string>& forbidden);

}  // namespace taggedunify

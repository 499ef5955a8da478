#pragma once

#include <optional>

#include "taggedunify/substitution.hpp"
#include "taggedunify/term.hpp"

namespace taggedunify {

/// Most general syntactic unifier in solved form, or nullopt.
/// Throws ImpureTerm if any side contains an xor node.
std::optional<Substitution> unify_std(const ProblemSet& problems);

/// Syntactic unification where xor is an ordinary free symbol: same arity,
/// arguments matched by position.
std::optional<Substitution> unify_free(const ProblemSet& problems);

/// As unify_free, but xor arguments are matched as a multiset (any
/// permutation). Returns the first unifier found.
std::optional<Substitution> unify_free_unordered(const ProblemSet& problems);

/// Convenience for a single pair, xor treated as a free symbol.
bool std_unifiable(const Term& a, const Term& b);

}  // namespace taggedunify

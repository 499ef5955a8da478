#pragma once

#include <map>
#include <optional>
#include <string>

#include "taggedunify/term.hpp"

namespace taggedunify {

/// Finite map from variable names to terms, applied simultaneously.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;
  explicit Substitution(Map bindings);

  /// Identity bindings X/X are dropped.
  void bind(const std::string& var, Term value);
  void erase(const std::string& var) { bindings_.erase(var); }

  std::optional<Term> lookup(const std::string& var) const;
  bool binds(const std::string& var) const { return bindings_.contains(var); }
  const Map& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  Term apply(const Term& t) const;
  Problem apply(const Problem& p) const { return {apply(p.lhs), apply(p.rhs)}; }
  ProblemSet apply(const ProblemSet& ps) const;

  /// No bound variable occurs in any right-hand side.
  bool is_idempotent() const;

  Substitution restricted_to(const std::set<std::string>& vars) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

/// apply(compose(s, r), t) == apply(r, apply(s, t)).
Substitution compose(const Substitution& s, const Substitution& r);

/// Renames variables outside `keep` to `_f1`, `_f2`, ... in order of first
/// occurrence and normalizes every binding modulo ACUN.
Substitution canonicalize(const Substitution& s, const std::set<std::string>& keep);

}  // namespace taggedunify

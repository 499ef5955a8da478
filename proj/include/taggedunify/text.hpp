#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taggedunify/substitution.hpp"
#include "taggedunify/term.hpp"

namespace taggedunify {

/// Text syntax (documented in docs/format.md):
///   Xyz, _v      variable        abc       constant
///   2.1, 3.3.1   tag constant    0         unity
///   [t, ...]     sequence        penc(t,k) senc(t,k) pk(t) sh(a,b)
///   xor(t, ...)  or  t + t + ...  xor
Term parse_term(std::string_view src);
std::string render_term(const Term& t);

std::string render_problem(const Problem& p);
std::string render_substitution(const Substitution& s);
Substitution parse_substitution(std::string_view src);

struct ProblemEntry {
  Problem problem;
  Theory theory;
  friend bool operator==(const ProblemEntry&, const ProblemEntry&) = default;
};

struct NamedTermSet {
  std::string name;
  std::vector<Term> terms;
  friend bool operator==(const NamedTermSet&, const NamedTermSet&) = default;
};

struct ProblemFile {
  /// From a `theory:` header; entries without `@theory` take it.
  std::optional<Theory> default_theory;
  std::vector<ProblemEntry> entries;
  std::vector<NamedTermSet> sets;
  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;

  ProblemSet problems() const;
};

/// Theory used for entries when neither `@theory` nor a header is given.
inline constexpr Theory kFallbackTheory = Theory::Combined;

ProblemFile parse_problem_file(std::string_view src);
std::string render_problem_file(const ProblemFile& file);

}  // namespace taggedunify

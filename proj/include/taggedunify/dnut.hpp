#pragma once

#include <optional>
#include <vector>

#include "taggedunify/term.hpp"

namespace taggedunify {

struct DnutViolation {
  /// 1: two interms of one xor unify; 2: interms of two different xors
  /// unify; 3: an xor has the unity element among its interms.
  int condition = 0;
  Term first;
  /// Absent for condition 3, where `first` is the Zero interm.
  std::optional<Term> second;
  std::vector<Term> enclosing;
};

struct DnutReport {
  bool satisfied = true;
  std::vector<DnutViolation> violations;
};

/// Every xor subterm of `terms`, distinct, in order of first occurrence
/// (pre-order, left to right).
std::vector<Term> xor_subterms(const std::vector<Term>& terms);

/// Exhaustive pairwise scan. Unifiability of interms treats xor as a free
/// symbol, so nested xors are compared structurally.
DnutReport dnut_check(const std::vector<Term>& terms);

/// Prefixes every xor interm with a hierarchical tag. Message i is the root
/// path i; the interms of a lone xor in a context get path.k, several xors
/// in one context get path.j.k. Xors nested inside an interm continue from
/// that interm's path.
std::vector<Term> dnut_tag(const std::vector<Term>& messages);

/// Inverse of the wrapping done by dnut_tag: removes the leading tag of every
/// sequence that starts with one.
Term erase_tags(const Term& t);

}  // namespace taggedunify

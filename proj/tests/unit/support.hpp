#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "taggedunify/substitution.hpp"
#include "taggedunify/term.hpp"
#include "taggedunify/text.hpp"

namespace tu_test {

using namespace taggedunify;

inline Term T(const std::string& src) { return parse_term(src); }

inline ProblemSet P(const std::string& src) { return parse_problem_file(src).problems(); }

inline std::size_t below(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

/// Random term over every constructor, tags and Zero included.
inline Term any_term(std::mt19937_64& rng, std::size_t depth) {
  static const char* vars[] = {"X", "Y", "Z", "N_B", "_v"};
  static const char* consts[] = {"a", "b", "c", "n_a"};
  if (depth == 0 || below(rng, 10) < 3) {
    switch (below(rng, 4)) {
      case 0: return Term::var(vars[below(rng, 5)]);
      case 1: return Term::constant(consts[below(rng, 4)]);
      case 2: {
        std::vector<unsigned> path;
        for (std::size_t i = 0, n = 1 + below(rng, 3); i < n; ++i)
          path.push_back(1 + static_cast<unsigned>(below(rng, 12)));
        return Term::tag(path);
      }
      default: return Term::zero();
    }
  }
  auto sub = [&] { return any_term(rng, depth - 1); };
  switch (below(rng, 6)) {
    case 0: {
      std::vector<Term> items;
      for (std::size_t i = 0, n = 1 + below(rng, 3); i < n; ++i) items.push_back(sub());
      return Term::seq(items);
    }
    case 1: return Term::penc(sub(), sub());
    case 2: return Term::senc(sub(), sub());
    case 3: return Term::pk(sub());
    case 4: return Term::sh(sub(), sub());
    default: {
      std::vector<Term> items;
      for (std::size_t i = 0, n = 2 + below(rng, 3); i < n; ++i) items.push_back(sub());
      return Term::xor_of(items);
    }
  }
}

/// Interpretation of xor terms in (Z/2)^64: atoms and non-xor subterms map
/// to fixed random words (computed structurally), xor to bitwise xor and
/// Zero to 0. Two terms equal modulo ACUN evaluate equally.
inline std::uint64_t word(const Term& t, std::uint64_t salt = 0x9e3779b97f4a7c15ULL) {
  if (t.is_zero()) return 0;
  if (t.is_xor()) {
    std::uint64_t w = 0;
    for (const Term& a : t.args()) w ^= word(a, salt);
    return w;
  }
  std::uint64_t h = salt ^ (static_cast<std::uint64_t>(t.kind()) * 0x100000001b3ULL);
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  };
  for (char c : t.name()) mix(static_cast<unsigned char>(c));
  for (unsigned p : t.path()) mix(p);
  for (const Term& a : t.args()) mix(word(a, salt));
  h ^= h >> 33;
  return h;
}

}  // namespace tu_test

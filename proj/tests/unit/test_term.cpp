#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace tu_test;

TEST_CASE("subterm relation") {
  const Term msg = T("xor([1, a], [2, b], [3, senc(n_b, k)])");
  CHECK(is_subterm(T("n_b"), msg));
  CHECK_FALSE(interms(msg).contains(T("n_b")));
  CHECK(is_subterm(msg, msg));
  CHECK_FALSE(is_subterm(T("a"), T("b")));
  CHECK_FALSE(is_subterm(T("X"), T("pk(Y)")));
}

TEST_CASE("interms") {
  CHECK(interms(T("xor([1, a], [2, b])")) == TermSet{T("[1, a]"), T("[2, b]")});
  CHECK(interms(T("a")) == TermSet{T("a")});
  CHECK(interms(T("xor(X, 0)")) == TermSet{T("X"), Term::zero()});
  // Nested xors are interms themselves; no implicit flattening.
  CHECK(interms(T("xor(xor(a, b), c)")) == TermSet{T("xor(a, b)"), T("c")});
}

TEST_CASE("subterms of a set") {
  CHECK(subterms_of_set({T("[1, a]")}) == TermSet{T("[1, a]"), T("1"), T("a")});
  CHECK(subterms_of_set({}).empty());
  CHECK(subterms_of_set({T("penc(X, pk(b))")}) ==
        TermSet{T("penc(X, pk(b))"), T("X"), T("pk(b)"), T("b")});
}

TEST_CASE("purity") {
  CHECK(is_pure(T("xor(W, X)"), Theory::Acun));
  CHECK(is_pure(T("penc([1, n_a], pk(B))"), Theory::Std));
  CHECK_FALSE(is_pure(T("xor([1, a], X)"), Theory::Acun));
  CHECK_FALSE(is_pure(T("[xor(a, b)]"), Theory::Std));
  CHECK(is_pure(T("X"), Theory::Std));
  CHECK(is_pure(T("0"), Theory::Acun));
}

TEST_CASE("owning theory") {
  CHECK(owning_theory(T("xor(a, b)")) == Theory::Acun);
  CHECK(owning_theory(T("0")) == Theory::Acun);
  CHECK(owning_theory(T("pk(a)")) == Theory::Std);
  CHECK_FALSE(owning_theory(T("X")).has_value());
  CHECK_FALSE(owning_theory(T("2.1")).has_value());
}

TEST_CASE("xor normal form") {
  CHECK(acun_normal_form(T("xor(a, a)")) == Term::zero());
  CHECK(acun_normal_form(T("xor(a, 0, b)")) == T("xor(a, b)"));
  CHECK(acun_normal_form(T("xor(X, xor(Y, Y), X, b)")) == T("b"));
  CHECK(acun_normal_form(T("xor(b, a)")) == T("xor(a, b)"));
  CHECK(acun_normal_form(T("[xor(a, a), pk(xor(c, 0))]")) == T("[0, pk(c)]"));

  SUBCASE("agrees with the (Z/2)^64 model") {
    for (const char* s : {"xor(X, xor(Y, Y), X, b)", "xor(a, 0, b)", "xor(a, a)",
                          "xor([xor(a, b)], [xor(b, a)], c)"}) {
      CHECK(word(T(s)) == word(acun_normal_form(T(s))));
    }
    CHECK(word(T("xor(X, xor(Y, Y), X, b)")) == word(T("b")));
  }
}

TEST_CASE("equality modulo each theory") {
  CHECK(equal_mod(T("xor(x, y, y)"), T("x"), Theory::Acun));
  CHECK_FALSE(equal_mod(T("xor(x, y, y)"), T("w"), Theory::Acun));
  CHECK_FALSE(equal_mod(T("xor(a, b)"), T("xor(b, a)"), Theory::FreeXor));
  CHECK(equal_mod(T("xor(a, b)"), T("xor(b, a)"), Theory::Combined));
  CHECK(equal_mod(T("pk(X)"), T("pk(X)"), Theory::Std));
  CHECK_FALSE(equal_mod(T("xor(a, a)"), T("0"), Theory::Std));
}

namespace {

/// An edit licensed by the xor equations: permute, regroup, insert Zero or
/// insert a cancelling pair.
Term xor_edit(std::mt19937_64& rng, const Term& t) {
  if (t.is_atomic()) {
    if (below(rng, 4) == 0) return Term::xor_of({t, Term::zero()});
    return t;
  }
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(xor_edit(rng, a));
  if (!t.is_xor()) return t.with_args(args);
  std::shuffle(args.begin(), args.end(), rng);
  switch (below(rng, 4)) {
    case 0: args.push_back(Term::zero()); break;
    case 1: {
      Term extra = any_term(rng, 1);
      args.push_back(extra);
      args.insert(args.begin(), extra);
      break;
    }
    case 2:
      if (args.size() >= 3) {
        Term grouped = Term::xor_of({args[0], args[1]});
        args.erase(args.begin(), args.begin() + 2);
        args.push_back(grouped);
      }
      break;
    default: break;
  }
  return Term::xor_of(args);
}

}  // namespace

TEST_CASE("normal form properties on random terms") {
  std::mt19937_64 rng(11);
  std::vector<Term> sample;
  for (int i = 0; i < 2000; ++i) {
    const Term t = any_term(rng, 4);
    const Term n = acun_normal_form(t);
    CHECK(acun_normal_form(n) == n);
    CHECK(acun_normal_form(xor_edit(rng, t)) == n);
    CHECK(word(t) == word(n));
    const TermSet subs = subterms_of_set({t});
    for (const Term& i2 : interms(t)) CHECK(subs.contains(i2));
    if (is_pure(t, Theory::Std) && is_pure(t, Theory::Acun)) CHECK(t.is_atomic());
    if (i < 60) sample.push_back(t);
  }
  // Equivalence relation on a sample enriched with edited copies.
  const std::size_t base = sample.size();
  for (std::size_t i = 0; i < base; ++i) sample.push_back(xor_edit(rng, sample[i]));
  for (const Term& a : sample) {
    CHECK(equal_mod(a, a, Theory::Acun));
    for (const Term& b : sample) {
      const bool ab = equal_mod(a, b, Theory::Acun);
      CHECK(ab == equal_mod(b, a, Theory::Acun));
      if (!ab) continue;
      for (const Term& c : sample) {
        if (equal_mod(b, c, Theory::Acun)) CHECK(equal_mod(a, c, Theory::Acun));
      }
    }
  }
}

TEST_CASE("constructor invariants") {
  CHECK_THROWS(Term::xor_of({T("a")}));
  CHECK_THROWS(Term::tag({}));
  CHECK_THROWS(Term::seq({}));
  CHECK(T("xor(a, 0)").args().size() == 2);
}

#include "taggedunify/unify_std.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "taggedunify/errors.hpp"
#include "taggedunify/text.hpp"

namespace taggedunify {

namespace {

/// Triangular bindings built during unification.
using Triangle = std::map<std::string, Term>;

Term walk(Term t, const Triangle& tri) {
  while (t.is_var()) {
    auto it = tri.find(t.name());
    if (it == tri.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& v, const Term& t, const Triangle& tri) {
  Term w = walk(t, tri);
  if (w.is_var()) return w.name() == v;
  for (const Term& a : w.args()) {
    if (occurs(v, a, tri)) return true;
  }
  return false;
}

Term resolve(const Term& t, const Triangle& tri) {
  Term w = walk(t, tri);
  if (w.is_atomic()) return w;
  std::vector<Term> args;
  args.reserve(w.args().size());
  for (const Term& a : w.args()) args.push_back(resolve(a, tri));
  return w.with_args(std::move(args));
}

Substitution solved_form(const Triangle& tri) {
  Substitution out;
  for (const auto& [v, t] : tri) out.bind(v, resolve(t, tri));
  return out;
}

enum class XorMode { Reject, Positional, Unordered };

using Worklist = std::vector<std::pair<Term, Term>>;

bool solve(Worklist work, Triangle& tri, XorMode mode) {
  while (!work.empty()) {
    auto [a0, b0] = std::move(work.back());
    work.pop_back();
    Term a = walk(a0, tri);
    Term b = walk(b0, tri);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (occurs(a.name(), b, tri)) return false;
      tri.emplace(a.name(), b);
      continue;
    }
    if (a.kind() != b.kind() || a.is_atomic()) return false;
    if (a.args().size() != b.args().size()) return false;
    if (a.is_xor() && mode == XorMode::Unordered) {
      std::vector<std::size_t> perm(b.args().size());
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Worklist branch = work;
        for (std::size_t i = 0; i < perm.size(); ++i)
          branch.emplace_back(a.args()[i], b.args()[perm[i]]);
        Triangle attempt = tri;
        if (solve(std::move(branch), attempt, mode)) {
          tri = std::move(attempt);
          return true;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
    for (std::size_t i = 0; i < a.args().size(); ++i)
      work.emplace_back(a.args()[i], b.args()[i]);
  }
  return true;
}

std::optional<Substitution> run(const ProblemSet& problems, XorMode mode) {
  Worklist work;
  for (auto it = problems.rbegin(); it != problems.rend(); ++it)
    work.emplace_back(it->lhs, it->rhs);
  Triangle tri;
  if (!solve(std::move(work), tri, mode)) return std::nullopt;
  return solved_form(tri);
}

}  // namespace

std::optional<Substitution> unify_std(const ProblemSet& problems) {
  for (const auto& p : problems) {
    for (const Term* side : {&p.lhs, &p.rhs}) {
      if (!is_pure(*side, Theory::Std))
        throw ImpureTerm("xor is not an STD operator: " + render_term(*side));
    }
  }
  return run(problems, XorMode::Reject);
}

std::optional<Substitution> unify_free(const ProblemSet& problems) {
  return run(problems, XorMode::Positional);
}

std::optional<Substitution> unify_free_unordered(const ProblemSet& problems) {
  return run(problems, XorMode::Unordered);
}

bool std_unifiable(const Term& a, const Term& b) {
  return unify_free({{a, b}}).has_value();
}

}  // namespace taggedunify

#include "taggedunify/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "taggedunify/dnut.hpp"
#include "taggedunify/errors.hpp"
#include "taggedunify/unify_std.hpp"

namespace taggedunify {

namespace {

// ---------------------------------------------------------------- oracle

using Candidates = std::vector<std::optional<Term>>;  // nullopt: left unbound

constexpr std::size_t kMaxSums = std::size_t{1} << 14;

std::vector<Term> all_subterms(const ProblemSet& problems) {
  TermSet roots;
  for (const auto& p : problems) {
    roots.insert(p.lhs);
    roots.insert(p.rhs);
  }
  auto s = subterms_of_set(roots);
  return {s.begin(), s.end()};
}

/// Every xor-sum of a subset of `items`, in normal form.
std::set<Term> subset_sums(const std::vector<Term>& items, std::size_t limit) {
  if (items.size() >= 63 || (std::size_t{1} << items.size()) > limit)
    throw BoundExceeded("too many xor combinations for the oracle");
  std::set<Term> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    std::vector<Term> chosen;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if ((mask >> i) & 1) chosen.push_back(items[i]);
    }
    if (chosen.empty()) {
      out.insert(Term::zero());
    } else if (chosen.size() == 1) {
      out.insert(chosen.front());
    } else {
      out.insert(acun_normal_form(Term::xor_of(std::move(chosen))));
    }
  }
  return out;
}

/// `var_sums` adds xor sums that mention other variables (combined only).
std::vector<Candidates> candidate_space(const ProblemSet& problems, Theory theory,
                                        const std::vector<std::string>& vars,
                                        std::size_t limit, bool var_sums) {
  const auto subs = all_subterms(problems);
  std::vector<Candidates> out;
  switch (theory) {
    case Theory::Std:
    case Theory::FreeXor:
      for (const auto& x : vars) {
        Candidates c{std::nullopt};
        for (const auto& s : subs) {
          if (!s.is_var() || s.name() != x) c.push_back(s);
        }
        out.push_back(std::move(c));
      }
      break;
    case Theory::Acun: {
      std::vector<Term> atoms;
      for (const auto& s : subs) {
        if (s.kind() == Kind::Const || s.kind() == Kind::Tag) atoms.push_back(s);
      }
      const auto sums = subset_sums(atoms, limit);
      for (std::size_t i = 0; i < vars.size(); ++i) out.emplace_back(sums.begin(), sums.end());
      break;
    }
    case Theory::Combined: {
      std::set<Term> summands;
      std::set<Term> plain;
      for (const auto& s : subs) {
        if (s.is_xor()) {
          for (const auto& i : s.args()) {
            if (!i.is_var() && !i.is_zero() && !i.is_xor()) summands.insert(i);
          }
        } else if (!s.is_var() && !s.is_zero()) {
          plain.insert(s);
        }
      }
      for (const auto& p : problems) {
        for (const Term* side : {&p.lhs, &p.rhs}) {
          if (!side->is_var() && !side->is_xor() && !side->is_zero()) summands.insert(*side);
        }
      }
      for (const auto& x : vars) {
        std::vector<Term> items(summands.begin(), summands.end());
        for (const auto& y : vars) {
          if (var_sums && y != x) items.push_back(Term::var(y));
        }
        std::set<Term> cands = subset_sums(items, limit);
        cands.insert(plain.begin(), plain.end());
        cands.erase(Term::var(x));
        Candidates c{std::nullopt};
        c.insert(c.end(), cands.begin(), cands.end());
        out.push_back(std::move(c));
      }
      break;
    }
  }
  return out;
}

class OracleSearch {
 public:
  OracleSearch(const ProblemSet& problems, Theory theory, std::vector<std::string> vars,
               std::vector<Candidates> cands, std::size_t node_budget)
      : problems_(problems),
        theory_(theory),
        vars_(std::move(vars)),
        cands_(std::move(cands)),
        budget_(node_budget) {
    for (std::size_t i = 0; i < vars_.size(); ++i) index_[vars_[i]] = i;
    choice_.assign(vars_.size(), std::nullopt);
    assigned_.assign(vars_.size(), false);
  }

  bool run() { return consistent() && descend(0); }
  std::size_t nodes() const { return nodes_; }

 private:
  enum class State { Ok, Pending, Cycle };

  /// Applies the current bindings. Unassigned variables stay in place and
  /// make the result Pending.
  State resolve(const Term& t, std::size_t budget, Term& out) const {
    if (t.is_var()) {
      out = t;
      auto it = index_.find(t.name());
      if (it == index_.end()) return State::Ok;
      if (!assigned_[it->second]) return State::Pending;
      const auto& binding = choice_[it->second];
      if (!binding) return State::Ok;
      if (budget == 0) return State::Cycle;
      return resolve(*binding, budget - 1, out);
    }
    if (t.is_atomic()) {
      out = t;
      return State::Ok;
    }
    std::vector<Term> args;
    State state = State::Ok;
    for (const Term& a : t.args()) {
      Term r = a;
      State s = resolve(a, budget, r);
      if (s == State::Cycle) return s;
      if (s == State::Pending) state = s;
      args.push_back(r);
    }
    out = t.with_args(std::move(args));
    return state;
  }

  /// Two STD positions with different heads never become equal, whatever
  /// the variables turn into; xor and Zero positions may.
  static bool clash(const Term& l, const Term& r) {
    if (l.is_var() || r.is_var() || l.is_xor() || r.is_xor() || l.is_zero() || r.is_zero())
      return false;
    if (l.kind() != r.kind() || l.name() != r.name() || l.path() != r.path() ||
        l.args().size() != r.args().size())
      return true;
    for (std::size_t i = 0; i < l.args().size(); ++i) {
      if (clash(l.args()[i], r.args()[i])) return true;
    }
    return false;
  }

  /// Modulo xor, l = r needs every interm of l + r to cancel against another
  /// one. Unless an unassigned variable sits among them, an interm whose
  /// head differs from all the others can never cancel.
  bool stranded_interm(const Term& l, const Term& r) const {
    if (theory_ != Theory::Combined && theory_ != Theory::Acun) return false;
    const Term sum = acun_normal_form(Term::xor_of({l, r}));
    if (sum.is_zero()) return false;
    const auto items = flattened_interms(sum);
    for (const Term& t : items) {
      if (t.is_var()) {
        auto it = index_.find(t.name());
        if (it != index_.end() && !assigned_[it->second]) return false;
      }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      bool partner = false;
      for (std::size_t j = 0; j < items.size() && !partner; ++j)
        partner = j != i && !clash(items[i], items[j]);
      if (!partner) return true;
    }
    return false;
  }

  /// False once some fully resolvable problem is violated.
  bool consistent() const {
    for (const auto& p : problems_) {
      Term l = p.lhs, r = p.rhs;
      const std::size_t budget = vars_.size() + 1;
      State sl = resolve(p.lhs, budget, l);
      State sr = resolve(p.rhs, budget, r);
      if (sl == State::Cycle || sr == State::Cycle) return false;
      if (sl == State::Pending || sr == State::Pending) {
        if (clash(l, r) || stranded_interm(l, r)) return false;
        continue;
      }
      if (!equal_mod(l, r, theory_)) return false;
    }
    return true;
  }

  bool descend(std::size_t k) {
    if (k == vars_.size()) return true;
    assigned_[k] = true;
    for (const auto& c : cands_[k]) {
      if (++nodes_ > budget_)
        throw BoundExceeded("oracle search exceeds " + std::to_string(budget_) + " nodes");
      choice_[k] = c;
      if (consistent() && descend(k + 1)) return true;
    }
    assigned_[k] = false;
    choice_[k] = std::nullopt;
    return false;
  }

  const ProblemSet& problems_;
  Theory theory_;
  std::vector<std::string> vars_;
  std::vector<Candidates> cands_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::optional<Term>> choice_;
  std::vector<bool> assigned_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

/// Variables of problems with few variables first, so that problems can be
/// checked early in the search.
std::vector<std::string> search_order(const ProblemSet& problems) {
  std::vector<std::pair<std::size_t, std::size_t>> by_size;
  for (std::size_t i = 0; i < problems.size(); ++i)
    by_size.emplace_back(vars_of(ProblemSet{problems[i]}).size(), i);
  std::sort(by_size.begin(), by_size.end());
  std::vector<std::string> order;
  for (const auto& [n, i] : by_size) {
    for (const auto& v : vars_of(ProblemSet{problems[i]})) {
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    }
  }
  return order;
}

/// Names every subterm whose theory differs from its parent's with an
/// auxiliary variable, so STD candidates can hold xor sums underneath.
ProblemSet name_aliens(const ProblemSet& problems) {
  const auto taken = names_of(problems);
  std::size_t counter = 0;
  std::map<Term, Term> memo;
  ProblemSet defs;
  std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
    if (t.is_atomic()) return t;
    const auto th = owning_theory(t);
    std::vector<Term> args;
    for (const Term& c : t.args()) {
      Term pc = go(c);
      if (!c.is_atomic() && owning_theory(c) != th) {
        auto it = memo.find(pc);
        if (it == memo.end()) {
          std::string name;
          do {
            name = "_O" + std::to_string(++counter);
          } while (taken.contains(name));
          it = memo.emplace(pc, Term::var(name)).first;
          defs.push_back({it->second, pc});
        }
        pc = it->second;
      }
      args.push_back(pc);
    }
    return t.with_args(std::move(args));
  };
  ProblemSet out;
  for (const auto& p : problems) out.push_back({go(p.lhs), go(p.rhs)});
  out.insert(out.end(), defs.begin(), defs.end());
  return out;
}

// ---------------------------------------------------------------- generators

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
bool chance(std::mt19937_64& rng, unsigned percent) { return rng() % 100 < percent; }

const std::vector<std::string> kVarNames{"X", "Y", "Z", "W", "U", "V", "R", "S"};
const std::vector<std::string> kConstNames{"a", "b", "c", "d", "e", "f", "g", "h"};
const std::vector<std::string> kProtocolVars{"A", "B", "N_A", "N_B", "K", "M"};
const std::vector<std::string> kProtocolConsts{"a", "b", "n_a", "n_b", "k", "m"};

Term gen_atom(std::mt19937_64& rng, const GenConfig& cfg, bool allow_zero) {
  if (allow_zero && chance(rng, 6)) return Term::zero();
  if (chance(rng, 50)) return Term::var(kVarNames[pick(rng, std::min(cfg.var_pool, kVarNames.size()))]);
  return Term::constant(kConstNames[pick(rng, std::min(cfg.atom_pool, kConstNames.size()))]);
}

Term gen_std_node(std::mt19937_64& rng, const std::function<Term()>& child) {
  switch (pick(rng, 5)) {
    case 0: {
      std::vector<Term> items;
      const std::size_t n = 1 + pick(rng, 3);
      for (std::size_t i = 0; i < n; ++i) items.push_back(child());
      return Term::seq(std::move(items));
    }
    case 1: return Term::penc(child(), child());
    case 2: return Term::senc(child(), child());
    case 3: return Term::pk(child());
    default: return Term::sh(child(), child());
  }
}

Term gen_xor_node(std::mt19937_64& rng, const GenConfig& cfg, const std::function<Term()>& child) {
  const std::size_t width = 2 + pick(rng, std::max<std::size_t>(cfg.max_xor_width, 2) - 1);
  std::vector<Term> items;
  for (std::size_t i = 0; i < width; ++i) items.push_back(child());
  return Term::xor_of(std::move(items));
}

/// Distinct subterms that purification replaces by a variable, plus bare
/// variables sitting directly under an xor (they end up shared as well).
std::size_t purification_load(const Term& t) {
  std::set<Term> aliens;
  std::set<Term> xor_vars;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.is_atomic()) return;
    const auto th = owning_theory(u);
    for (const Term& c : u.args()) {
      const auto cth = owning_theory(c);
      if ((cth && cth != th) || (u.is_xor() && (c.kind() == Kind::Const || c.kind() == Kind::Tag)))
        aliens.insert(c);
      if (u.is_xor() && c.is_var()) xor_vars.insert(c);
      walk(c);
    }
  };
  walk(t);
  return aliens.size() + xor_vars.size();
}

/// Positions reachable from the root without entering an xor node (the xor
/// node itself counts). Paths are child indices.
void outside_xor_positions(const Term& t, std::vector<std::size_t>& path,
                           std::vector<std::vector<std::size_t>>& out) {
  out.push_back(path);
  if (t.is_xor() || t.is_atomic()) return;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    path.push_back(i);
    outside_xor_positions(t.args()[i], path, out);
    path.pop_back();
  }
}

Term subterm_at(const Term& t, const std::vector<std::size_t>& path, std::size_t from = 0) {
  if (from == path.size()) return t;
  return subterm_at(t.args()[path[from]], path, from + 1);
}

Term replace_at(const Term& t, const std::vector<std::size_t>& path, const Term& by,
                std::size_t from = 0) {
  if (from == path.size()) return by;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path[from]] = replace_at(args[path[from]], path, by, from + 1);
  return t.with_args(std::move(args));
}

Term gen_protocol_term(std::mt19937_64& rng, const GenConfig& cfg, std::size_t depth,
                       bool untagged_interms) {
  std::function<Term(std::size_t)> go = [&](std::size_t d) -> Term {
    if (d == 0 || (d < depth && chance(rng, 30))) {
      if (chance(rng, 55))
        return Term::var(kProtocolVars[pick(rng, std::min(cfg.var_pool + 2, kProtocolVars.size()))]);
      return Term::constant(
          kProtocolConsts[pick(rng, std::min(cfg.atom_pool + 2, kProtocolConsts.size()))]);
    }
    if (chance(rng, 40)) {
      return gen_xor_node(rng, cfg, [&] {
        if (untagged_interms && chance(rng, 35))
          return Term::var(kVarNames[pick(rng, std::min(cfg.var_pool, kVarNames.size()))]);
        return go(d - 1);
      });
    }
    return gen_std_node(rng, [&] { return go(d - 1); });
  };
  return go(depth);
}

/// Message bound per protocol so every pair stays under the default
/// identification cap (4 + 4 + the split variable).
constexpr std::size_t kMessageLoad = 4;

}  // namespace

// ---------------------------------------------------------------- oracle API

bool ground_unifiable(const ProblemSet& problems, Theory theory, const GenConfig& bound) {
  const ProblemSet work = theory == Theory::Combined ? name_aliens(problems) : problems;
  const auto vars = search_order(work);
  auto search = [&](bool var_sums, std::size_t budget) {
    auto cands = candidate_space(work, theory, vars, kMaxSums, var_sums);
    for (auto& c : cands) {
      // Small candidates first: unifiers found early end the search early.
      std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
        return (a ? a->depth() : 0) < (b ? b->depth() : 0);
      });
    }
    OracleSearch s(work, theory, vars, std::move(cands), budget);
    const bool found = s.run();
    return std::pair{found, s.nodes()};
  };
  if (theory != Theory::Combined) return search(true, bound.oracle_ceiling).first;
  // Every answer is checked exactly, so a hit in the smaller space without
  // variable sums is final; only a miss needs the full space.
  const auto [quick, used] = search(false, bound.oracle_ceiling);
  if (quick) return true;
  return search(true, bound.oracle_ceiling - used).first;
}

bool free_unifiable(const ProblemSet& problems) { return unify_free(problems).has_value(); }

bool free_unifiable_unordered(const ProblemSet& problems) {
  return unify_free_unordered(problems).has_value();
}

// ---------------------------------------------------------------- generators

Term gen_term(std::mt19937_64& rng, const GenConfig& cfg, std::size_t depth, bool allow_std,
              bool allow_xor) {
  if (depth == 0 || (!allow_std && !allow_xor) || chance(rng, 30))
    return gen_atom(rng, cfg, allow_xor);
  auto child = [&] { return gen_term(rng, cfg, depth - 1, allow_std, allow_xor); };
  if (allow_xor && (!allow_std || chance(rng, 45))) return gen_xor_node(rng, cfg, child);
  return gen_std_node(rng, child);
}

namespace {

/// A near copy of `t`: one position replaced by a variable or a fresh term.
Term mutate(std::mt19937_64& rng, const GenConfig& cfg, const Term& t, bool allow_std,
            bool allow_xor) {
  std::vector<std::vector<std::size_t>> positions;
  std::function<void(const Term&, std::vector<std::size_t>&)> walk =
      [&](const Term& u, std::vector<std::size_t>& path) {
        positions.push_back(path);
        for (std::size_t i = 0; i < u.args().size(); ++i) {
          path.push_back(i);
          walk(u.args()[i], path);
          path.pop_back();
        }
      };
  std::vector<std::size_t> path;
  walk(t, path);
  const auto& where = positions[pick(rng, positions.size())];
  Term by = chance(rng, 50) ? Term::var(kVarNames[pick(rng, std::min(cfg.var_pool, kVarNames.size()))])
                            : gen_term(rng, cfg, 1, allow_std, allow_xor);
  return replace_at(t, where, by);
}

std::size_t shared_after_purification(const ProblemSet& problems) {
  const auto gamma2 = purify_problems(purify_terms(problems).problems).problems;
  const auto [s, a] = split_problems(gamma2);
  const auto sv = vars_of(s);
  const auto av = vars_of(a);
  std::size_t n = 0;
  for (const auto& v : sv) n += av.contains(v);
  return n;
}

}  // namespace

ProblemSet gen_problem(std::mt19937_64& rng, const GenConfig& cfg, ProblemFamily family) {
  const bool allow_std = family != ProblemFamily::Acun;
  const bool allow_xor = family != ProblemFamily::Std;
  const Theory theory = family == ProblemFamily::Std    ? Theory::Std
                        : family == ProblemFamily::Acun ? Theory::Acun
                                                        : Theory::Combined;
  const BscaOptions caps;
  for (;;) {
    ProblemSet ps;
    const std::size_t n = 1 + pick(rng, 2);
    for (std::size_t i = 0; i < n; ++i) {
      Term lhs = gen_term(rng, cfg, 1 + pick(rng, cfg.max_depth), allow_std, allow_xor);
      Term rhs = chance(rng, 50)
                     ? mutate(rng, cfg, lhs, allow_std, allow_xor)
                     : gen_term(rng, cfg, 1 + pick(rng, cfg.max_depth), allow_std, allow_xor);
      ps.push_back({lhs, rhs});
    }
    if (vars_of(ps).size() > cfg.var_pool) continue;
    // Auxiliary variables widen every xor candidate list; skip hopeless draws.
    if (family == ProblemFamily::Combined && vars_of(name_aliens(ps)).size() > cfg.var_pool + 2)
      continue;
    try {
      ground_unifiable(ps, theory, cfg);
    } catch (const BoundExceeded&) {
      continue;
    }
    if (family == ProblemFamily::Combined &&
        shared_after_purification(ps) > caps.max_partition_vars)
      continue;
    return ps;
  }
}

std::vector<Term> gen_raw_protocol(std::mt19937_64& rng, const GenConfig& cfg) {
  std::vector<Term> out;
  const std::size_t n = 2 + pick(rng, 3);
  while (out.size() < n) {
    Term m = gen_protocol_term(rng, cfg, 1 + pick(rng, cfg.max_depth), true);
    if (purification_load(m) <= kMessageLoad) out.push_back(m);
  }
  return out;
}

std::vector<Term> gen_dnut_protocol(std::mt19937_64& rng, const GenConfig& cfg) {
  std::vector<Term> raw;
  const std::size_t n = 2 + pick(rng, 2);
  while (raw.size() < n) {
    Term m = gen_protocol_term(rng, cfg, 1 + pick(rng, cfg.max_depth), false);
    if (purification_load(dnut_tag({m}).front()) <= kMessageLoad) raw.push_back(m);
  }
  std::vector<Term> tagged = dnut_tag(raw);
  const auto xors = xor_subterms(tagged);

  // Variants of the tagged messages as a receiver might see them.
  std::vector<Term> out = tagged;
  std::size_t fresh = 0;
  const std::size_t variants = 1 + pick(rng, 3);
  for (std::size_t v = 0; v < variants; ++v) {
    Term variant = tagged[pick(rng, tagged.size())];
    const std::size_t edits = 1 + pick(rng, 2);
    for (std::size_t e = 0; e < edits; ++e) {
      std::vector<std::vector<std::size_t>> positions;
      std::vector<std::size_t> path;
      outside_xor_positions(variant, path, positions);
      if (positions.size() < 2) break;
      const auto& where = positions[1 + pick(rng, positions.size() - 1)];
      Term by = Term::var("P" + std::to_string(++fresh));
      if (!xors.empty() && chance(rng, 25)) {
        by = xors[pick(rng, xors.size())];
      } else if (chance(rng, 25)) {
        by = gen_term(rng, cfg, 1, true, false);
      }
      variant = replace_at(variant, where, by);
    }
    std::vector<Term> trial = out;
    trial.push_back(variant);
    if (purification_load(variant) <= kMessageLoad && dnut_check(trial).satisfied)
      out = std::move(trial);
  }
  return out;
}

// ---------------------------------------------------------------- theorem

namespace {

bool is_counterexample(const Term& m, const Term& t, const BscaOptions& options) {
  if (m.is_var() || t.is_var()) return false;
  const ProblemSet ps{{m, t}};
  return combined_unifiable(ps, options) && !free_unifiable(ps);
}

std::vector<Term> shrink_candidates(const Term& t) {
  std::vector<Term> out;
  for (const Term& a : t.args()) out.push_back(a);
  if (t.is_xor() && t.args().size() > 2) {
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      std::vector<Term> rest;
      for (std::size_t j = 0; j < t.args().size(); ++j) {
        if (j != i) rest.push_back(t.args()[j]);
      }
      out.push_back(Term::xor_of(std::move(rest)));
    }
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    for (const Term& c : shrink_candidates(t.args()[i])) {
      std::vector<Term> args(t.args().begin(), t.args().end());
      args[i] = c;
      out.push_back(t.with_args(std::move(args)));
    }
  }
  return out;
}

void add_stats(PopulationStats& s, const PairResult& r) {
  ++s.pairs;
  s.combined += r.combined;
  s.free += r.free;
  s.free_unordered += r.free_unordered;
  s.combined_not_free += r.combined && !r.free;
  s.combined_not_free_unordered += r.combined && !r.free_unordered;
  s.free_not_combined += r.free && !r.combined;
}

constexpr std::size_t kMaxListed = 25;

}  // namespace

std::pair<Term, Term> shrink_counterexample(const Term& lhs, const Term& rhs,
                                            const BscaOptions& options) {
  std::pair<Term, Term> cur{lhs, rhs};
  for (bool improved = true; improved;) {
    improved = false;
    for (int side = 0; side < 2 && !improved; ++side) {
      const Term& t = side == 0 ? cur.first : cur.second;
      for (const Term& c : shrink_candidates(t)) {
        try {
          if (side == 0 ? is_counterexample(c, cur.second, options)
                        : is_counterexample(cur.first, c, options)) {
            (side == 0 ? cur.first : cur.second) = c;
            improved = true;
            break;
          }
        } catch (const ChoiceSpaceExceeded&) {
        }
      }
    }
  }
  return cur;
}

void check_theorem(const std::vector<Term>& terms, TheoremReport& report,
                   const BscaOptions& options) {
  ++report.samples;
  const bool dnut = dnut_check(terms).satisfied;
  report.dnut_satisfied += dnut;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const Term& m = terms[i];
      const Term& t = terms[j];
      if (m.is_var() || t.is_var() || m == t) continue;
      const ProblemSet ps{{m, t}};
      PairResult r{m, t};
      try {
        r.combined = combined_unifiable(ps, options);
      } catch (const ChoiceSpaceExceeded&) {
        if (report.incomplete.size() < kMaxListed) report.incomplete.emplace_back(m, t);
        continue;
      }
      r.free = free_unifiable(ps);
      r.free_unordered = r.free || free_unifiable_unordered(ps);
      if (!dnut) {
        if (r.combined && !r.free && report.premise_failures.size() < kMaxListed)
          report.premise_failures.push_back(r);
        continue;
      }
      add_stats(report.non_variables, r);
      if (m.kind() != Kind::Seq && t.kind() != Kind::Seq) add_stats(report.non_sequences, r);
      if (r.combined && !r.free) {
        auto [a, b] = shrink_counterexample(m, t, options);
        report.counterexamples.push_back({a, b, true, false, free_unifiable_unordered({{a, b}})});
      }
      if (r.combined && !r.free_unordered) report.counterexamples_unordered.push_back(r);
    }
  }
}

TheoremReport run_theorem_harness(const GenConfig& cfg, bool tagged, const BscaOptions& options) {
  std::mt19937_64 rng(cfg.seed);
  TheoremReport report;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    const auto terms = tagged ? gen_dnut_protocol(rng, cfg) : gen_raw_protocol(rng, cfg);
    check_theorem(terms, report, options);
  }
  return report;
}

bool interm_pairing_holds(const ProblemSet& problems, const Substitution& sigma) {
  for (const auto& p : problems) {
    const Term l = sigma.apply(p.lhs);
    const Term r = sigma.apply(p.rhs);
    if (l == r) continue;
    std::vector<Term> items = flattened_interms(l);
    const auto rest = flattened_interms(r);
    items.insert(items.end(), rest.begin(), rest.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].is_zero()) continue;
      bool partner = false;
      for (std::size_t j = 0; j < items.size() && !partner; ++j)
        partner = j != i && std_unifiable(items[i], items[j]);
      if (!partner) return false;
    }
  }
  return true;
}

}  // namespace taggedunify

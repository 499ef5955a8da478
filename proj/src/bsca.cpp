#include "taggedunify/bsca.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "taggedunify/errors.hpp"
#include "taggedunify/text.hpp"
#include "taggedunify/unify_acun.hpp"
#include "taggedunify/unify_std.hpp"

namespace taggedunify {

namespace {

/// Free constants and tags count as STD symbols here: a constant under an
/// xor becomes a purification variable, so variable identification can
/// equate it with variables that the STD side binds to that constant.
std::optional<Theory> home_theory(const Term& t) {
  if (t.kind() == Kind::Const || t.kind() == Kind::Tag) return Theory::Std;
  return owning_theory(t);
}

bool cross_theory(const Term& a, const Term& b) {
  auto ta = home_theory(a);
  auto tb = home_theory(b);
  return ta && tb && *ta != *tb;
}

class Purifier {
 public:
  explicit Purifier(const ProblemSet& problems) : fresh_(names_of(problems), "_V") {}

  Term side(const Term& t) {
    if (t.is_atomic()) return t;
    const auto th = owning_theory(t);
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& c : t.args()) {
      Term pc = side(c);
      const auto cth = home_theory(c);
      args.push_back(cth && cth != th ? abstract(pc) : pc);
    }
    return t.with_args(std::move(args));
  }

  Term abstract(const Term& purified) {
    auto it = memo_.find(purified);
    if (it != memo_.end()) return it->second;
    Term v = fresh_var();
    memo_.emplace(purified, v);
    out_.problems.push_back({v, purified});
    return v;
  }

  Term fresh_var() {
    std::string name = fresh_.next();
    out_.introduced.push_back(name);
    return Term::var(name);
  }

  void emit(Problem p) { out_.problems.push_back(std::move(p)); }
  Purified take() { return std::move(out_); }

 private:
  FreshVars fresh_;
  std::map<Term, Term> memo_;
  Purified out_;
};

std::vector<std::string> sorted_vars(const ProblemSet& ps) {
  auto vs = vars_of(ps);
  return {vs.begin(), vs.end()};
}

Substitution partition_substitution(const VarPartition& partition) {
  Substitution s;
  for (const auto& block : partition) {
    const std::string& rep = *std::min_element(block.begin(), block.end());
    for (const auto& v : block) s.bind(v, Term::var(rep));
  }
  return s;
}

bool contains_name(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string constant_name_for(const std::string& var, std::set<std::string>& taken) {
  std::string base;
  for (char c : var) {
    if (c == '_' && base.empty()) continue;
    base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (base.empty() || !std::islower(static_cast<unsigned char>(base[0]))) base = "c" + base;
  std::string name = base;
  for (std::size_t i = 1; taken.contains(name); ++i) name = base + "_" + std::to_string(i);
  taken.insert(name);
  return name;
}

/// Searches a linear order on all variables such that the STD mgu and a
/// restricted xor solution both respect it. V1 variables are placed as soon
/// as their requirements hold; only the position of V2 variables branches.
class OrderSearch {
 public:
  OrderSearch(std::vector<std::string> vars, const std::vector<std::string>& v2,
              const Substitution& sigma1, const Substitution& beta, const Gf2System& sys)
      : vars_(std::move(vars)), sys_(sys) {
    const std::size_t n = vars_.size();
    if (n > 63) throw ChoiceSpaceExceeded("too many variables for linear order search");
    in_v2_.assign(n, false);
    deps_.assign(n, 0);
    atom_.assign(n, -1);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[vars_[i]] = i;
    for (const auto& v : v2) in_v2_[index.at(v)] = true;
    std::map<std::string, std::size_t> const_owner;
    for (const auto& [v, c] : beta.bindings()) const_owner[c.name()] = index.at(v);
    for (std::size_t i = 0; i < n; ++i) {
      if (in_v2_[i]) continue;
      if (auto b = sigma1.lookup(vars_[i])) {
        for (const auto& name : names_of(*b)) {
          auto it = const_owner.find(name);
          if (it != const_owner.end() && in_v2_[it->second]) deps_[i] |= bit(it->second);
        }
      }
      if (auto c = beta.lookup(vars_[i])) {
        auto pos = std::lower_bound(sys.atoms.begin(), sys.atoms.end(), *c);
        if (pos != sys.atoms.end() && *pos == *c) atom_[i] = pos - sys.atoms.begin();
      }
    }
  }

  std::optional<std::vector<std::string>> run() {
    std::vector<std::size_t> order;
    if (!place(0, order)) return std::nullopt;
    std::vector<std::string> out;
    for (auto i : order) out.push_back(vars_[i]);
    return out;
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

  bool v1_ready(std::size_t i, std::uint64_t placed) const {
    if ((deps_[i] & ~placed) != 0) return false;
    if (atom_[i] < 0) return true;
    std::set<std::string> forbidden;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      if (in_v2_[j] && (placed & bit(j))) forbidden.insert(vars_[j]);
    }
    return acun_atom_admissible(sys_, static_cast<std::size_t>(atom_[i]), forbidden);
  }

  bool place(std::uint64_t placed, std::vector<std::size_t>& order) {
    const std::size_t n = vars_.size();
    const std::size_t mark = order.size();
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_v2_[i] && !(placed & bit(i)) && v1_ready(i, placed)) {
          placed |= bit(i);
          order.push_back(i);
          progress = true;
        }
      }
    }
    if (placed == (n == 64 ? ~std::uint64_t{0} : bit(n) - 1)) return true;
    if (!failed_.contains(placed)) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_v2_[i] || (placed & bit(i))) continue;
        order.push_back(i);
        if (place(placed | bit(i), order)) return true;
        order.pop_back();
      }
      failed_.insert(placed);
    }
    order.resize(mark);
    return false;
  }

  std::vector<std::string> vars_;
  const Gf2System& sys_;
  std::vector<bool> in_v2_;
  std::vector<std::uint64_t> deps_;
  std::vector<long> atom_;
  std::unordered_set<std::uint64_t> failed_;
};

void check_purity(const ProblemSet& gamma2) {
  for (const auto& p : gamma2) {
    const Theory th = is_acun_problem(p) ? Theory::Acun : Theory::Std;
    if (!is_pure(p.lhs, th) || !is_pure(p.rhs, th))
      throw std::logic_error("purification left an impure problem: " + render_problem(p));
  }
}

}  // namespace

BscaOptions options_from_env(BscaOptions base) {
  const char* env = std::getenv("TAGGEDUNIFY_CAPS");
  if (!env) return base;
  std::string spec(env);
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(start, end - start);
    start = end + 1;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("TAGGEDUNIFY_CAPS: bad item " + item);
    std::string key = item.substr(0, eq);
    std::size_t value = std::stoul(item.substr(eq + 1));
    if (value == 0) throw std::invalid_argument("TAGGEDUNIFY_CAPS: caps must be positive");
    if (key == "partition_vars") {
      base.max_partition_vars = value;
    } else if (key == "branches") {
      base.max_branches = value;
    } else {
      throw std::invalid_argument("TAGGEDUNIFY_CAPS: unknown cap " + key);
    }
  }
  return base;
}

bool is_acun_problem(const Problem& p) {
  return owning_theory(p.lhs) == Theory::Acun || owning_theory(p.rhs) == Theory::Acun;
}

Purified purify_terms(const ProblemSet& problems) {
  Purifier pur(problems);
  for (const auto& p : problems) {
    Term lhs = pur.side(p.lhs);
    if (cross_theory(p.lhs, p.rhs)) {
      Term v = pur.fresh_var();
      pur.emit({v, lhs});
      Term rhs = pur.side(p.rhs);
      pur.emit({v, rhs});
    } else {
      Term rhs = pur.side(p.rhs);
      pur.emit({lhs, rhs});
    }
  }
  return pur.take();
}

Purified purify_problems(const ProblemSet& problems) {
  Purified out;
  FreshVars fresh(names_of(problems), "_V");
  for (const auto& p : problems) {
    if (cross_theory(p.lhs, p.rhs)) {
      std::string name = fresh.next();
      out.introduced.push_back(name);
      out.problems.push_back({Term::var(name), p.lhs});
      out.problems.push_back({Term::var(name), p.rhs});
    } else {
      out.problems.push_back(p);
    }
  }
  return out;
}

ProblemSet apply_partition(const ProblemSet& problems, const VarPartition& partition) {
  return partition_substitution(partition).apply(problems);
}

namespace {

/// Restricted-growth enumeration of the partitions of `vars`. `accept` sees
/// each prefix and may prune it by returning false.
void enumerate_partitions(const std::vector<std::string>& vars,
                          const std::function<bool(const VarPartition&, std::size_t)>& accept,
                          const std::function<bool(const VarPartition&)>& visit) {
  VarPartition blocks;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == vars.size()) return visit(blocks);
    for (std::size_t b = 0; b <= blocks.size(); ++b) {
      if (b == blocks.size()) {
        blocks.push_back({vars[i]});
      } else {
        blocks[b].push_back(vars[i]);
      }
      bool keep_going = true;
      if (accept(blocks, i + 1)) keep_going = rec(i + 1);
      if (b == blocks.size() - 1 && blocks[b].size() == 1) {
        blocks.pop_back();
      } else {
        blocks[b].pop_back();
      }
      if (!keep_going) return false;
    }
    return true;
  };
  rec(0);
}

}  // namespace

std::vector<VarIdentification> variable_identifications(const ProblemSet& gamma2,
                                                        std::size_t max_vars) {
  const auto vars = sorted_vars(gamma2);
  if (vars.size() > max_vars)
    throw ChoiceSpaceExceeded("variable identification over " + std::to_string(vars.size()) +
                              " variables exceeds the cap of " + std::to_string(max_vars));
  std::vector<VarIdentification> out;
  enumerate_partitions(
      vars, [](const VarPartition&, std::size_t) { return true; },
      [&](const VarPartition& p) {
        VarPartition sorted = p;
        for (auto& b : sorted) std::sort(b.begin(), b.end());
        out.push_back({sorted, apply_partition(gamma2, sorted)});
        return true;
      });
  return out;
}

std::pair<ProblemSet, ProblemSet> split_problems(const ProblemSet& gamma3) {
  std::pair<ProblemSet, ProblemSet> out;
  for (const auto& p : gamma3) (is_acun_problem(p) ? out.second : out.first).push_back(p);
  return out;
}

SplitBranch solve_split(const ProblemSet& gamma41, const ProblemSet& gamma42,
                        const std::vector<std::string>& v1, const std::vector<std::string>& v2,
                        const std::vector<std::string>& pivot_priority) {
  SplitBranch br;
  br.v1 = v1;
  br.v2 = v2;

  ProblemSet all = gamma41;
  all.insert(all.end(), gamma42.begin(), gamma42.end());
  std::set<std::string> taken = names_of(all);
  const auto std_vars = vars_of(gamma41);
  const auto acun_vars = vars_of(gamma42);

  Substitution to_const1;  // V2 variables inside the STD problems
  Substitution to_const2;  // V1 variables inside the xor problems
  for (const auto& v : v1) {
    if (acun_vars.contains(v)) {
      Term c = Term::constant(constant_name_for(v, taken));
      to_const2.bind(v, c);
      br.beta.bind(v, c);
    }
  }
  for (const auto& v : v2) {
    if (std_vars.contains(v)) {
      Term c = Term::constant(constant_name_for(v, taken));
      to_const1.bind(v, c);
      br.beta.bind(v, c);
    }
  }
  br.gamma51 = to_const1.apply(gamma41);
  br.gamma52 = to_const2.apply(gamma42);

  br.sigma1 = unify_std(br.gamma51);
  if (!br.sigma1) {
    br.outcome = "std-not-unifiable";
    return br;
  }

  const Gf2System sys = build_gf2_system(br.gamma52, pivot_priority);
  for (std::size_t a = 0; a < sys.atoms.size(); ++a) {
    if (!acun_atom_admissible(sys, a, {})) {
      br.outcome = "acun-not-unifiable";
      return br;
    }
  }

  std::vector<std::string> order_vars = v1;
  order_vars.insert(order_vars.end(), v2.begin(), v2.end());
  auto order = OrderSearch(order_vars, v2, *br.sigma1, br.beta, sys).run();
  if (!order) {
    br.outcome = "no-linear-order";
    return br;
  }
  br.linear_order = *order;

  std::map<Term, std::set<std::string>> forbidden;
  std::set<std::string> v2_before;
  for (const auto& v : br.linear_order) {
    if (contains_name(v2, v)) {
      if (acun_vars.contains(v)) v2_before.insert(v);
    } else if (auto c = to_const2.lookup(v)) {
      forbidden[*c] = v2_before;
    }
  }
  for (const auto& [v, c] : br.beta.bindings()) taken.insert(c.name());
  FreshVars fresh(taken);
  br.sigma2 = unify_acun_restricted(br.gamma52, forbidden, pivot_priority, fresh);
  br.outcome = br.sigma2 ? "solved" : "acun-restriction-violated";
  return br;
}

std::vector<SplitBranch> solve_systems(const ProblemSet& gamma41, const ProblemSet& gamma42,
                                       std::size_t max_vars) {
  ProblemSet all = gamma41;
  all.insert(all.end(), gamma42.begin(), gamma42.end());
  const auto vars = sorted_vars(all);
  if (vars.size() > max_vars)
    throw ChoiceSpaceExceeded("split enumeration over " + std::to_string(vars.size()) +
                              " variables exceeds the cap of " + std::to_string(max_vars));
  std::vector<SplitBranch> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::vector<std::string> v1, v2;
    for (std::size_t i = 0; i < vars.size(); ++i)
      ((mask >> i) & 1 ? v2 : v1).push_back(vars[i]);
    out.push_back(solve_split(gamma41, gamma42, v1, v2));
  }
  return out;
}

std::optional<Substitution> combine_unifiers(const Substitution& sigma1,
                                             const Substitution& sigma2,
                                             const std::vector<std::string>& v1,
                                             const std::vector<std::string>& v2,
                                             const Substitution& beta,
                                             const std::vector<std::string>& linear_order) {
  std::map<std::string, std::string> owner;  // fresh constant -> variable
  for (const auto& [v, c] : beta.bindings()) owner[c.name()] = v;

  std::map<std::string, Term> done;
  std::set<std::string> active;
  bool cycle = false;

  std::function<Term(const std::string&)> value;
  std::function<Term(const Term&)> back_substitute = [&](const Term& t) -> Term {
    if (t.kind() == Kind::Const) {
      auto it = owner.find(t.name());
      return it == owner.end() ? t : value(it->second);
    }
    if (t.is_atomic()) return t;
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(back_substitute(a));
    return t.with_args(std::move(args));
  };
  value = [&](const std::string& x) -> Term {
    if (auto it = done.find(x); it != done.end()) return it->second;
    if (active.contains(x)) {
      cycle = true;
      return Term::var(x);
    }
    active.insert(x);
    const Substitution& own = contains_name(v1, x) ? sigma1 : sigma2;
    Term result = back_substitute(own.lookup(x).value_or(Term::var(x)));
    active.erase(x);
    done.emplace(x, result);
    return result;
  };

  for (const auto& x : linear_order) value(x);
  for (const auto* block : {&v1, &v2}) {
    for (const auto& x : *block) value(x);
  }
  if (cycle) return std::nullopt;
  Substitution out;
  for (const auto& [x, t] : done) out.bind(x, t);
  return out;
}

CombinedResult unify_combined(const ProblemSet& problems, const BscaOptions& options) {
  CombinedResult result;
  BscaTrace& trace = result.trace;
  trace.gamma0 = problems;
  Purified p1 = purify_terms(problems);
  trace.gamma1 = p1.problems;
  Purified p2 = purify_problems(p1.problems);
  trace.gamma2 = p2.problems;
  trace.introduced = p1.introduced;
  trace.introduced.insert(trace.introduced.end(), p2.introduced.begin(), p2.introduced.end());
  check_purity(trace.gamma2);

  const auto [std_part, acun_part] = split_problems(trace.gamma2);
  const auto std_vars = vars_of(std_part);
  const auto acun_vars = vars_of(acun_part);
  const auto all_vars = vars_of(trace.gamma2);
  const auto original_vars = vars_of(problems);

  std::vector<std::string> ident;
  for (const auto& v : all_vars) {
    if (!options.shared_only || (std_vars.contains(v) && acun_vars.contains(v)))
      ident.push_back(v);
  }
  trace.identified_vars = ident;
  if (ident.size() > options.max_partition_vars)
    throw ChoiceSpaceExceeded("variable identification over " + std::to_string(ident.size()) +
                              " variables exceeds the cap of " +
                              std::to_string(options.max_partition_vars));

  auto relaxed_ok = [&](const VarPartition& blocks) {
    Substitution s = partition_substitution(blocks);
    if (!unify_std(s.apply(std_part))) return false;
    return !unify_acun(s.apply(acun_part)).empty();
  };

  auto accept = [&](const VarPartition& blocks, std::size_t) {
    if (!options.prune) return true;
    if (relaxed_ok(blocks)) return true;
    ++trace.partitions_pruned;
    return false;
  };

  auto visit = [&](const VarPartition& blocks) -> bool {
    ++trace.partitions_explored;
    VarPartition partition = blocks;
    for (auto& b : partition) std::sort(b.begin(), b.end());
    for (const auto& v : all_vars) {
      if (!contains_name(ident, v)) partition.push_back({v});
    }
    std::sort(partition.begin(), partition.end());
    const Substitution rep = partition_substitution(partition);
    ProblemSet gamma3 = rep.apply(trace.gamma2);
    auto [gamma41, gamma42] = split_problems(gamma3);
    const auto vars41 = vars_of(gamma41);
    const auto vars42 = vars_of(gamma42);
    const auto vars3 = vars_of(gamma3);

    // A variable equated to a non-variable STD-side term cannot be a constant there.
    std::set<std::string> forced_v1;
    if (options.prune) {
      for (const auto& p : gamma41) {
        if (p.lhs.is_var() && !p.rhs.is_var()) forced_v1.insert(p.lhs.name());
        if (p.rhs.is_var() && !p.lhs.is_var()) forced_v1.insert(p.rhs.name());
      }
    }
    std::vector<std::string> fixed_v1, fixed_v2, choice;
    for (const auto& v : vars3) {
      const bool in_std = vars41.contains(v);
      const bool in_acun = vars42.contains(v);
      if (forced_v1.contains(v)) {
        fixed_v1.push_back(v);
      } else if (options.shared_only && !(in_std && in_acun)) {
        (in_std ? fixed_v1 : fixed_v2).push_back(v);
      } else {
        choice.push_back(v);
      }
    }
    if (choice.size() >= 63) throw ChoiceSpaceExceeded("too many split variables");

    std::vector<std::string> pivot;
    for (const auto& v : trace.introduced) {
      if (vars3.contains(v)) pivot.push_back(v);
    }

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << choice.size()); ++mask) {
      if (++trace.branches_explored > options.max_branches)
        throw ChoiceSpaceExceeded("more than " + std::to_string(options.max_branches) +
                                  " identification/split branches");
      std::vector<std::string> v1 = fixed_v1, v2 = fixed_v2;
      for (std::size_t i = 0; i < choice.size(); ++i)
        ((mask >> i) & 1 ? v2 : v1).push_back(choice[i]);
      std::sort(v1.begin(), v1.end());
      std::sort(v2.begin(), v2.end());

      BscaBranch branch{partition, gamma3, gamma41, gamma42,
                        solve_split(gamma41, gamma42, v1, v2, pivot), std::nullopt};
      const SplitBranch& sb = branch.split;
      if (sb.sigma1 && sb.sigma2) {
        auto sigma = combine_unifiers(*sb.sigma1, *sb.sigma2, sb.v1, sb.v2, sb.beta,
                                      sb.linear_order);
        if (sigma) {
          // Non-representatives follow their class representative.
          Substitution full = *sigma;
          for (const auto& [v, r] : rep.bindings()) full.bind(v, sigma->apply(r));
          Substitution answer =
              canonicalize(full.restricted_to(original_vars), original_vars);
          for (const auto& pr : problems) {
            if (!equal_mod(answer.apply(pr.lhs), answer.apply(pr.rhs), Theory::Combined))
              throw std::logic_error("combined unifier " + render_substitution(answer) +
                                     " does not solve " + render_problem(pr));
          }
          branch.combined = answer;
          if (std::find(result.unifiers.begin(), result.unifiers.end(), answer) ==
              result.unifiers.end())
            result.unifiers.push_back(answer);
        } else {
          branch.split.outcome = "combination-cycle";
        }
      }
      if (options.record_trace) trace.branches.push_back(std::move(branch));
      if (options.stop_at_first && !result.unifiers.empty()) return false;
    }
    return true;
  };

  enumerate_partitions(ident, accept, visit);
  return result;
}

bool combined_unifiable(const ProblemSet& problems, BscaOptions options) {
  options.stop_at_first = true;
  return !unify_combined(problems, options).unifiers.empty();
}

}  // namespace taggedunify

#include "taggedunify/substitution.hpp"

#include <vector>

namespace taggedunify {

Substitution::Substitution(Map bindings) {
  for (auto& [v, t] : bindings) bind(v, std::move(t));
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.is_var() && value.name() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(value));
}

std::optional<Term> Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  if (t.is_var()) {
    auto it = bindings_.find(t.name());
    return it == bindings_.end() ? t : it->second;
  }
  if (t.is_atomic()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? t.with_args(std::move(args)) : t;
}

ProblemSet Substitution::apply(const ProblemSet& ps) const {
  ProblemSet out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(apply(p));
  return out;
}

bool Substitution::is_idempotent() const {
  for (const auto& [v, t] : bindings_) {
    for (const auto& u : vars_of(t)) {
      if (bindings_.contains(u)) return false;
    }
  }
  return true;
}

Substitution Substitution::restricted_to(const std::set<std::string>& vars) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) {
    if (vars.contains(v)) out.bind(v, t);
  }
  return out;
}

Substitution compose(const Substitution& s, const Substitution& r) {
  Substitution out;
  for (const auto& [v, t] : s.bindings()) out.bind(v, r.apply(t));
  for (const auto& [v, t] : r.bindings()) {
    if (!s.binds(v)) out.bind(v, t);
  }
  return out;
}

namespace {

void collect_in_order(const Term& t, std::vector<std::string>& order,
                      std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.name()).second) order.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_in_order(a, order, seen);
}

}  // namespace

Substitution canonicalize(const Substitution& s, const std::set<std::string>& keep) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  std::vector<std::pair<std::string, Term>> normalized;
  for (const auto& [v, t] : s.bindings()) {
    Term nf = acun_normal_form(t);
    collect_in_order(nf, order, seen);
    normalized.emplace_back(v, std::move(nf));
  }
  Substitution rename;
  std::size_t next = 1;
  for (const auto& name : order) {
    if (keep.contains(name)) continue;
    while (keep.contains("_f" + std::to_string(next))) ++next;
    rename.bind(name, Term::var("_f" + std::to_string(next++)));
  }
  Substitution out;
  for (auto& [v, t] : normalized) out.bind(v, acun_normal_form(rename.apply(t)));
  return out;
}

}  // namespace taggedunify

#include "taggedunify/term.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace taggedunify {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::make(Kind kind, std::string name, std::vector<unsigned> path,
                std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  std::size_t h = std::hash<int>{}(static_cast<int>(kind));
  h = mix(h, std::hash<std::string>{}(name));
  for (unsigned p : path) h = mix(h, p);
  std::size_t depth = 0;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    depth = std::max(depth, a.depth());
  }
  node->name = std::move(name);
  node->path = std::move(path);
  node->args = std::move(args);
  node->hash = h;
  node->depth = depth + 1;
  return Term(std::move(node));
}

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return make(Kind::Var, std::move(name), {}, {});
}

Term Term::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty constant name");
  return make(Kind::Const, std::move(name), {}, {});
}

Term Term::tag(std::vector<unsigned> path) {
  if (path.empty()) throw std::invalid_argument("empty tag path");
  if (std::find(path.begin(), path.end(), 0U) != path.end())
    throw std::invalid_argument("tag path components must be positive");
  return make(Kind::Tag, {}, std::move(path), {});
}

Term Term::zero() {
  static const Term z = make(Kind::Zero, {}, {}, {});
  return z;
}

Term Term::seq(std::vector<Term> items) {
  if (items.empty()) throw std::invalid_argument("empty sequence");
  return make(Kind::Seq, {}, {}, std::move(items));
}

Term Term::penc(Term body, Term key) {
  return make(Kind::Penc, {}, {}, {std::move(body), std::move(key)});
}

Term Term::senc(Term body, Term key) {
  return make(Kind::Senc, {}, {}, {std::move(body), std::move(key)});
}

Term Term::pk(Term agent) { return make(Kind::Pk, {}, {}, {std::move(agent)}); }

Term Term::sh(Term a, Term b) {
  return make(Kind::Sh, {}, {}, {std::move(a), std::move(b)});
}

Term Term::xor_of(std::vector<Term> items) {
  if (items.size() < 2) throw std::invalid_argument("xor needs at least two interms");
  return make(Kind::Xor, {}, {}, std::move(items));
}

Term Term::with_args(std::vector<Term> args) const {
  switch (kind()) {
    case Kind::Seq: return seq(std::move(args));
    case Kind::Xor: return xor_of(std::move(args));
    case Kind::Penc:
    case Kind::Senc:
    case Kind::Sh:
      if (args.size() != 2) throw std::invalid_argument("binary operator arity");
      return make(kind(), {}, {}, std::move(args));
    case Kind::Pk:
      if (args.size() != 1) throw std::invalid_argument("pk arity");
      return pk(std::move(args[0]));
    default:
      if (!args.empty()) throw std::invalid_argument("atom has no arguments");
      return *this;
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  return a.name() == b.name() && a.path() == b.path() &&
         std::equal(a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Var:
    case Kind::Const:
      return a.name() <=> b.name();
    case Kind::Tag:
      return a.path() <=> b.path();
    case Kind::Zero:
      return std::strong_ordering::equal;
    default:
      break;
  }
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::set<Op> operators(Theory th) {
  switch (th) {
    case Theory::Std: return {Op::Seq, Op::Penc, Op::Senc, Op::Pk, Op::Sh};
    case Theory::Acun:
    case Theory::FreeXor: return {Op::Xor};
    case Theory::Combined: return {Op::Seq, Op::Penc, Op::Senc, Op::Pk, Op::Sh, Op::Xor};
  }
  return {};
}

std::optional<Op> head_op(const Term& t) {
  switch (t.kind()) {
    case Kind::Seq: return Op::Seq;
    case Kind::Penc: return Op::Penc;
    case Kind::Senc: return Op::Senc;
    case Kind::Pk: return Op::Pk;
    case Kind::Sh: return Op::Sh;
    case Kind::Xor: return Op::Xor;
    default: return std::nullopt;
  }
}

std::optional<Theory> owning_theory(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::Const:
    case Kind::Tag: return std::nullopt;
    case Kind::Zero:
    case Kind::Xor: return Theory::Acun;
    default: return Theory::Std;
  }
}

bool is_subterm(const Term& t, const Term& u) {
  if (t == u) return true;
  if (t.depth() >= u.depth()) return false;
  for (const Term& a : u.args()) {
    if (is_subterm(t, a)) return true;
  }
  return false;
}

TermSet interms(const Term& t) {
  if (!t.is_xor()) return {t};
  return TermSet(t.args().begin(), t.args().end());
}

namespace {

void collect_subterms(const Term& t, TermSet& out) {
  if (!out.insert(t).second) return;
  for (const Term& a : t.args()) collect_subterms(a, out);
}

}  // namespace

TermSet subterms_of_set(const TermSet& terms) {
  TermSet out;
  for (const Term& t : terms) collect_subterms(t, out);
  return out;
}

bool is_pure(const Term& t, Theory th) {
  if (auto op = head_op(t)) {
    if (!operators(th).contains(*op)) return false;
  }
  for (const Term& a : t.args()) {
    if (!is_pure(a, th)) return false;
  }
  return true;
}

namespace {

void flatten_into(const Term& t, std::vector<Term>& out) {
  if (t.is_xor()) {
    for (const Term& a : t.args()) flatten_into(a, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<Term> flattened_interms(const Term& t) {
  std::vector<Term> out;
  flatten_into(t, out);
  return out;
}

Term acun_normal_form(const Term& t) {
  if (t.is_atomic()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(acun_normal_form(a));
  if (!t.is_xor()) return t.with_args(std::move(args));

  std::vector<Term> flat;
  for (const Term& a : args) flatten_into(a, flat);
  std::sort(flat.begin(), flat.end());
  std::vector<Term> kept;
  for (std::size_t i = 0; i < flat.size();) {
    std::size_t j = i;
    while (j < flat.size() && flat[j] == flat[i]) ++j;
    if ((j - i) % 2 == 1 && !flat[i].is_zero()) kept.push_back(flat[i]);
    i = j;
  }
  if (kept.empty()) return Term::zero();
  if (kept.size() == 1) return kept.front();
  return Term::xor_of(std::move(kept));
}

bool equal_mod(const Term& a, const Term& b, Theory th) {
  switch (th) {
    case Theory::Std:
    case Theory::FreeXor: return a == b;
    case Theory::Acun:
    case Theory::Combined: return acun_normal_form(a) == acun_normal_form(b);
  }
  return false;
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out, bool vars_only) {
  if (t.is_var() || (!vars_only && t.kind() == Kind::Const)) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_names(a, out, vars_only);
}

}  // namespace

std::set<std::string> vars_of(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out, true);
  return out;
}

std::set<std::string> vars_of(const ProblemSet& problems) {
  std::set<std::string> out;
  for (const auto& p : problems) {
    collect_names(p.lhs, out, true);
    collect_names(p.rhs, out, true);
  }
  return out;
}

std::set<std::string> names_of(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out, false);
  return out;
}

std::set<std::string> names_of(const ProblemSet& problems) {
  std::set<std::string> out;
  for (const auto& p : problems) {
    collect_names(p.lhs, out, false);
    collect_names(p.rhs, out, false);
  }
  return out;
}

std::string_view theory_name(Theory th) {
  switch (th) {
    case Theory::Std: return "std";
    case Theory::Acun: return "acun";
    case Theory::FreeXor: return "free-xor";
    case Theory::Combined: return "combined";
  }
  return "?";
}

std::optional<Theory> parse_theory_name(std::string_view name) {
  if (name == "std") return Theory::Std;
  if (name == "acun") return Theory::Acun;
  if (name == "free-xor") return Theory::FreeXor;
  if (name == "combined") return Theory::Combined;
  return std::nullopt;
}

}  // namespace taggedunify

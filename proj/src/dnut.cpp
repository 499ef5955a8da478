#include "taggedunify/dnut.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "taggedunify/unify_std.hpp"

namespace taggedunify {

namespace {

using Path = std::vector<unsigned>;

void collect_xors(const Term& t, std::vector<Term>& out, std::set<Term>& seen, bool maximal) {
  if (t.is_xor()) {
    if (seen.insert(t).second) out.push_back(t);
    if (maximal) return;
  }
  for (const Term& a : t.args()) collect_xors(a, out, seen, maximal);
}

Path extend(Path p, unsigned k) {
  p.push_back(k);
  return p;
}

Term wrap(const Path& path, const Term& interm) {
  Term tag = Term::tag(path);
  if (interm.kind() == Kind::Seq && interm.args().size() >= 2) {
    std::vector<Term> items{tag};
    items.insert(items.end(), interm.args().begin(), interm.args().end());
    return Term::seq(std::move(items));
  }
  return Term::seq({tag, interm});
}

Term replace(const Term& t, const std::map<Term, Term>& repl) {
  if (auto it = repl.find(t); it != repl.end()) return it->second;
  if (t.is_atomic()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(replace(a, repl));
  return t.with_args(std::move(args));
}

Term tag_context(const Term& t, const Path& path) {
  std::vector<Term> xors;
  std::set<Term> seen;
  collect_xors(t, xors, seen, true);
  if (xors.empty()) return t;
  std::map<Term, Term> repl;
  for (std::size_t j = 0; j < xors.size(); ++j) {
    const Path base = xors.size() == 1 ? path : extend(path, static_cast<unsigned>(j + 1));
    std::vector<Term> items;
    const auto args = xors[j].args();
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Path p = extend(base, static_cast<unsigned>(i + 1));
      items.push_back(wrap(p, tag_context(args[i], p)));
    }
    repl.emplace(xors[j], Term::xor_of(std::move(items)));
  }
  return replace(t, repl);
}

}  // namespace

std::vector<Term> xor_subterms(const std::vector<Term>& terms) {
  std::vector<Term> out;
  std::set<Term> seen;
  for (const Term& t : terms) collect_xors(t, out, seen, false);
  return out;
}

DnutReport dnut_check(const std::vector<Term>& terms) {
  DnutReport report;
  const auto xors = xor_subterms(terms);
  for (std::size_t x = 0; x < xors.size(); ++x) {
    const auto a = xors[x].args();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) report.violations.push_back({3, a[i], std::nullopt, {xors[x]}});
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        if (std_unifiable(a[i], a[j]))
          report.violations.push_back({1, a[i], a[j], {xors[x]}});
      }
    }
  }
  for (std::size_t x = 0; x < xors.size(); ++x) {
    for (std::size_t y = x + 1; y < xors.size(); ++y) {
      for (const Term& s : xors[x].args()) {
        for (const Term& t : xors[y].args()) {
          if (std_unifiable(s, t)) report.violations.push_back({2, s, t, {xors[x], xors[y]}});
        }
      }
    }
  }
  report.satisfied = report.violations.empty();
  return report;
}

std::vector<Term> dnut_tag(const std::vector<Term>& messages) {
  // Extra leading components only matter if the input already carries
  // colliding tags.
  for (int depth = 0; depth < 8; ++depth) {
    std::vector<Term> out;
    for (std::size_t m = 0; m < messages.size(); ++m) {
      Path root(static_cast<std::size_t>(depth), 1000);
      root.push_back(static_cast<unsigned>(m + 1));
      out.push_back(tag_context(messages[m], root));
    }
    if (dnut_check(out).satisfied) return out;
  }
  throw std::logic_error("tagging could not satisfy DNUT");
}

Term erase_tags(const Term& t) {
  if (t.is_atomic()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(erase_tags(a));
  if (t.kind() == Kind::Seq && args.front().kind() == Kind::Tag && args.size() >= 2) {
    if (args.size() == 2) return args[1];
    return Term::seq(std::vector<Term>(args.begin() + 1, args.end()));
  }
  return t.with_args(std::move(args));
}

}  // namespace taggedunify

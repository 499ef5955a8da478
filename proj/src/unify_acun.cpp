#include "taggedunify/unify_acun.hpp"

#include <algorithm>

#include "taggedunify/errors.hpp"
#include "taggedunify/text.hpp"

namespace taggedunify {

namespace {

using Bits = std::vector<bool>;

/// Solves sum_j rows[i][j] * y[j] = rhs[i] using only columns marked in
/// `allowed`. Free columns are set to zero.
std::optional<Bits> solve_particular(const std::vector<Bits>& rows, const Bits& rhs,
                                     const Bits& allowed) {
  const std::size_t n = allowed.size();
  std::vector<Bits> m = rows;
  Bits b = rhs;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    if (!allowed[c]) continue;
    std::size_t p = r;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Bits::swap(b[p], b[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != r && m[i][c]) {
        for (std::size_t k = 0; k < n; ++k) m[i][k] = m[i][k] != m[r][k];
        b[i] = b[i] != b[r];
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i) {
    // Rows without an allowed pivot must be satisfied by the right-hand side.
    bool any = false;
    for (std::size_t c = 0; c < n; ++c) any = any || (allowed[c] && m[i][c]);
    if (!any && b[i]) return std::nullopt;
  }
  Bits y(n, false);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) y[pivot_col[i]] = b[i];
  return y;
}

struct Rref {
  std::vector<Bits> rows;
  std::vector<std::size_t> pivot_col;  // pivot column of rows[i]
};

Rref reduce(std::vector<Bits> m, std::size_t n) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != r && m[i][c]) {
        for (std::size_t k = 0; k < n; ++k) m[i][k] = m[i][k] != m[r][k];
      }
    }
    out.pivot_col.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

Term sum_of(std::vector<Term> items) {
  if (items.empty()) return Term::zero();
  if (items.size() == 1) return items.front();
  return acun_normal_form(Term::xor_of(std::move(items)));
}

std::vector<Bits> var_matrix(const Gf2System& sys) {
  std::vector<Bits> rows;
  rows.reserve(sys.rows.size());
  for (const auto& row : sys.rows) rows.push_back(row.vars);
  return rows;
}

Bits atom_column(const Gf2System& sys, std::size_t atom) {
  Bits col;
  col.reserve(sys.rows.size());
  for (const auto& row : sys.rows) col.push_back(row.atoms[atom]);
  return col;
}

Bits allowed_mask(const Gf2System& sys, const std::set<std::string>& forbidden) {
  Bits allowed(sys.vars.size(), true);
  for (std::size_t j = 0; j < sys.vars.size(); ++j)
    allowed[j] = !forbidden.contains(sys.vars[j]);
  return allowed;
}

}  // namespace

std::string FreshVars::next() {
  for (;;) {
    std::string name = prefix_ + std::to_string(++counter_);
    if (!avoid_.contains(name)) return name;
  }
}

Gf2System build_gf2_system(const ProblemSet& problems,
                           const std::vector<std::string>& pivot_priority) {
  Gf2System sys;
  std::vector<std::vector<Term>> per_problem;
  std::set<Term> atoms;
  std::set<std::string> vars;
  for (const auto& p : problems) {
    Term sum = acun_normal_form(Term::xor_of({p.lhs, p.rhs}));
    std::vector<Term> items = sum.is_zero() ? std::vector<Term>{} : flattened_interms(sum);
    for (const Term& t : items) {
      switch (t.kind()) {
        case Kind::Var: vars.insert(t.name()); break;
        case Kind::Const:
        case Kind::Tag: atoms.insert(t); break;
        default:
          throw ImpureTerm("not a pure ACUN problem: " + render_problem(p));
      }
    }
    per_problem.push_back(std::move(items));
  }
  sys.atoms.assign(atoms.begin(), atoms.end());
  for (const auto& v : pivot_priority) {
    if (vars.contains(v) &&
        std::find(sys.vars.begin(), sys.vars.end(), v) == sys.vars.end())
      sys.vars.push_back(v);
  }
  for (const auto& v : vars) {
    if (std::find(sys.vars.begin(), sys.vars.end(), v) == sys.vars.end())
      sys.vars.push_back(v);
  }
  for (const auto& items : per_problem) {
    Gf2System::Row row{Bits(sys.vars.size(), false), Bits(sys.atoms.size(), false)};
    for (const Term& t : items) {
      if (t.is_var()) {
        auto j = std::find(sys.vars.begin(), sys.vars.end(), t.name()) - sys.vars.begin();
        row.vars[j] = !row.vars[j];
      } else {
        auto j = std::lower_bound(sys.atoms.begin(), sys.atoms.end(), t) - sys.atoms.begin();
        row.atoms[j] = !row.atoms[j];
      }
    }
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

bool acun_atom_admissible(const Gf2System& sys, std::size_t atom,
                          const std::set<std::string>& forbidden) {
  return solve_particular(var_matrix(sys), atom_column(sys, atom), allowed_mask(sys, forbidden))
      .has_value();
}

std::optional<Substitution> unify_acun_restricted(
    const ProblemSet& problems, const std::map<Term, std::set<std::string>>& forbidden,
    const std::vector<std::string>& pivot_priority, FreshVars& fresh) {
  const Gf2System sys = build_gf2_system(problems, pivot_priority);
  const std::size_t nv = sys.vars.size();
  const auto rows = var_matrix(sys);

  // Particular solution, one column per atom.
  std::vector<Bits> particular;
  particular.reserve(sys.atoms.size());
  static const std::set<std::string> kNone;
  for (std::size_t a = 0; a < sys.atoms.size(); ++a) {
    auto it = forbidden.find(sys.atoms[a]);
    auto y = solve_particular(rows, atom_column(sys, a),
                              allowed_mask(sys, it == forbidden.end() ? kNone : it->second));
    if (!y) return std::nullopt;
    particular.push_back(std::move(*y));
  }

  // Homogeneous part, parameterized by the free columns of the reduced system.
  const Rref rref = reduce(rows, nv);
  Bits is_pivot(nv, false);
  for (auto c : rref.pivot_col) is_pivot[c] = true;

  std::vector<Term> param(nv, Term::zero());
  for (std::size_t f = 0; f < nv; ++f) {
    if (is_pivot[f]) continue;
    bool touched = false;
    for (const auto& y : particular) touched = touched || y[f];
    param[f] = Term::var(touched ? fresh.next() : sys.vars[f]);
  }

  Substitution sigma;
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Term> items;
    for (std::size_t a = 0; a < sys.atoms.size(); ++a) {
      if (particular[a][v]) items.push_back(sys.atoms[a]);
    }
    if (is_pivot[v]) {
      std::size_t row = std::find(rref.pivot_col.begin(), rref.pivot_col.end(), v) -
                        rref.pivot_col.begin();
      for (std::size_t f = 0; f < nv; ++f) {
        if (!is_pivot[f] && rref.rows[row][f]) items.push_back(param[f]);
      }
    } else {
      items.push_back(param[v]);
    }
    sigma.bind(sys.vars[v], sum_of(std::move(items)));
  }
  return sigma;
}

std::vector<Substitution> unify_acun(const ProblemSet& problems) {
  FreshVars fresh(names_of(problems));
  auto sigma = unify_acun_restricted(problems, {}, {}, fresh);
  if (!sigma) return {};
  return {std::move(*sigma)};
}

}  // namespace taggedunify

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace taggedunify {

enum class Kind : std::uint8_t {
  Var,
  Const,
  Tag,
  Zero,
  Seq,
  Penc,
  Senc,
  Pk,
  Sh,
  Xor,
};

/// Operator symbols of the term algebra. `Zero` is the nullary unity of the
/// xor family; it only matters for purification, see `owning_theory`.
enum class Op : std::uint8_t { Seq, Penc, Senc, Pk, Sh, Xor, Zero };

enum class Theory : std::uint8_t { Std, Acun, FreeXor, Combined };

/// An immutable algebraic term. Copies share structure.
class Term {
 public:
  static Term var(std::string name);
  static Term constant(std::string name);
  static Term tag(std::vector<unsigned> path);
  static Term zero();
  static Term seq(std::vector<Term> items);
  static Term penc(Term body, Term key);
  static Term senc(Term body, Term key);
  static Term pk(Term agent);
  static Term sh(Term a, Term b);
  /// Variadic xor; at least two items. Never flattens or drops Zero.
  static Term xor_of(std::vector<Term> items);

  /// Rebuilds a compound term of the same kind around new children.
  Term with_args(std::vector<Term> args) const;

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<unsigned>& path() const { return node_->path; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t hash() const { return node_->hash; }
  std::size_t depth() const { return node_->depth; }

  bool is_var() const { return kind() == Kind::Var; }
  bool is_xor() const { return kind() == Kind::Xor; }
  bool is_zero() const { return kind() == Kind::Zero; }
  /// Variables, constants, tags and Zero.
  bool is_atomic() const { return node_->args.empty(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<unsigned> path;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t depth = 1;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Kind kind, std::string name, std::vector<unsigned> path,
                   std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::set<Term>;

struct Problem {
  Term lhs;
  Term rhs;
  friend bool operator==(const Problem&, const Problem&) = default;
  friend auto operator<=>(const Problem&, const Problem&) = default;
};

using ProblemSet = std::vector<Problem>;

/// Operators(th). Combined owns the union.
std::set<Op> operators(Theory th);
std::optional<Op> head_op(const Term& t);

/// The theory whose signature owns the head of `t`; empty for variables,
/// constants and tags. Zero belongs to the xor theory.
std::optional<Theory> owning_theory(const Term& t);

bool is_subterm(const Term& t, const Term& u);
TermSet interms(const Term& t);
TermSet subterms_of_set(const TermSet& terms);
/// Variables and constants (Zero included) are pure wrt every theory.
bool is_pure(const Term& t, Theory th);

/// Flattens xor, sorts interms, cancels pairs, drops Zero; applied to every
/// xor node in the term.
Term acun_normal_form(const Term& t);
bool equal_mod(const Term& a, const Term& b, Theory th);

std::set<std::string> vars_of(const Term& t);
std::set<std::string> vars_of(const ProblemSet& problems);
std::set<std::string> names_of(const Term& t);
std::set<std::string> names_of(const ProblemSet& problems);

/// Interms of `t` after flattening nested xor nodes (no cancellation).
std::vector<Term> flattened_interms(const Term& t);

std::string_view theory_name(Theory th);
std::optional<Theory> parse_theory_name(std::string_view name);

}  // namespace taggedunify

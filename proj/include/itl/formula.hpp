#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace itl {

// Connectives of the temporal-intuitionistic language. Negation and verum
// are parse-time sugar (`~a` = a -> false, `true` = false -> false) and do
// not appear as node kinds.
enum class Connective {
  Atom,
  Falsum,
  And,
  Or,
  Implies,
  Next,
  Eventually,
  Henceforth,
};

/// Immutable formula tree. Copies share structure internally; the sharing
/// is unobservable because nodes are never mutated.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula falsum();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula next(Formula sub);
  static Formula eventually(Formula sub);
  static Formula henceforth(Formula sub);

  // Sugar constructors, immediately desugared.
  static Formula negation(Formula sub);  // sub -> false
  static Formula verum();                // false -> false

  Connective kind() const { return node_->kind; }
  bool is(Connective c) const { return node_->kind == c; }

  const std::string& atom_name() const;
  Formula lhs() const;
  Formula rhs() const;
  Formula sub() const;  // unary operand

  bool is_negation() const;  // Implies(_, false)
  bool is_verum() const;     // Implies(false, false)

  /// Number of AST nodes.
  int node_count() const { return node_->size; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  /// Sorted, distinct atom names occurring in the formula.
  std::vector<std::string> atom_names() const;

  std::string to_string() const;

 private:
  struct Node {
    Connective kind;
    std::string atom;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    int size = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective kind, std::string atom, const Formula* lhs,
                      const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

/// Total order used for canonical formula sequences: node count first,
/// printed form second. Children always precede their parents.
bool formula_less(const Formula& a, const Formula& b);

struct ParseError : std::runtime_error {
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("parse error at position " +
                           std::to_string(position) + ": " + what),
        position(position) {}
  std::size_t position;
};

/// Parses the concrete syntax:
///   atoms [a-z][a-zA-Z0-9_]*, constants false/true,
///   unary ~ X F G (tightest), then &, then |, then -> (right-assoc).
Formula parse_formula(std::string_view text);

/// Minimal-parenthesization printer; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

/// Subformula-closed set, ordered by formula_less (so iteration is
/// bottom-up: every member's children appear earlier).
class ClosureSet {
 public:
  static ClosureSet of(const Formula& seed);

  std::size_t size() const { return members_.size(); }
  const Formula& at(std::size_t i) const { return members_.at(i); }
  const std::vector<Formula>& members() const { return members_; }

  std::optional<int> index_of(const Formula& f) const;
  bool contains(const Formula& f) const { return index_of(f).has_value(); }

  std::vector<Formula>::const_iterator begin() const { return members_.begin(); }
  std::vector<Formula>::const_iterator end() const { return members_.end(); }

 private:
  std::vector<Formula> members_;
};

ClosureSet subformula_closure(const Formula& f);

/// Subset of a closure set, as sorted member indexes.
using SigmaSubset = std::vector<int>;

bool sigma_subset_of(const SigmaSubset& a, const SigmaSubset& b);
bool sigma_contains(const SigmaSubset& s, int index);
std::string sigma_to_string(const SigmaSubset& s, const ClosureSet& sigma);

}  // namespace itl

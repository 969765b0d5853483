#pragma once

// Many-sorted first-order logic over finite domains: signatures, terms,
// formulas, domain assignments, problems and interpretations.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msfmf {

enum class SortId : std::uint32_t {};
enum class FuncId : std::uint32_t {};
enum class PredId : std::uint32_t {};

constexpr std::size_t to_index(SortId id) { return static_cast<std::size_t>(id); }
constexpr std::size_t to_index(FuncId id) { return static_cast<std::size_t>(id); }
constexpr std::size_t to_index(PredId id) { return static_cast<std::size_t>(id); }

/// A canonical domain value. `index` is zero-based; the text form is
/// `Sort!(index + 1)`.
struct Value {
  SortId sort{};
  std::uint32_t index = 0;

  friend auto operator<=>(const Value&, const Value&) = default;
};

struct FuncDecl {
  std::string name;
  std::vector<SortId> args;
  SortId result{};

  std::size_t arity() const { return args.size(); }
  bool is_constant() const { return args.empty(); }

  friend bool operator==(const FuncDecl&, const FuncDecl&) = default;
};

struct PredDecl {
  std::string name;
  std::vector<SortId> args;

  std::size_t arity() const { return args.size(); }

  friend bool operator==(const PredDecl&, const PredDecl&) = default;
};

/// Sorts, function symbols and predicate symbols. Sort names live in their
/// own namespace; function and predicate names share one.
class Signature {
 public:
  SortId add_sort(std::string name);
  FuncId add_func(std::string name, std::vector<SortId> args, SortId result);
  PredId add_pred(std::string name, std::vector<SortId> args);

  std::optional<SortId> find_sort(std::string_view name) const;
  std::optional<FuncId> find_func(std::string_view name) const;
  std::optional<PredId> find_pred(std::string_view name) const;
  bool has_symbol(std::string_view name) const;

  const std::string& sort_name(SortId id) const { return sorts_.at(to_index(id)); }
  const FuncDecl& func(FuncId id) const { return funcs_.at(to_index(id)); }
  const PredDecl& pred(PredId id) const { return preds_.at(to_index(id)); }

  std::size_t sort_count() const { return sorts_.size(); }
  std::size_t func_count() const { return funcs_.size(); }
  std::size_t pred_count() const { return preds_.size(); }

  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::vector<FuncDecl>& funcs() const { return funcs_; }
  const std::vector<PredDecl>& preds() const { return preds_; }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.sorts_ == b.sorts_ && a.funcs_ == b.funcs_ && a.preds_ == b.preds_;
  }

 private:
  std::vector<std::string> sorts_;
  std::vector<FuncDecl> funcs_;
  std::vector<PredDecl> preds_;
  std::map<std::string, SortId, std::less<>> sort_index_;
  std::map<std::string, FuncId, std::less<>> func_index_;
  std::map<std::string, PredId, std::less<>> pred_index_;
};

enum class TermKind : std::uint8_t { Variable, Apply, Element };

/// Immutable term. Copies share structure.
class Term {
 public:
  static Term variable(std::string name, SortId sort);
  static Term apply(FuncId func, std::vector<Term> args = {});
  static Term element(Value value);

  TermKind kind() const;
  /// Variable name.
  const std::string& name() const;
  /// Sort of a variable or element. Applications carry no sort; use sort_of.
  SortId annotated_sort() const;
  FuncId func() const;
  const std::vector<Term>& args() const;
  Value value() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

SortId sort_of(const Term& term, const Signature& signature);

enum class FormulaKind : std::uint8_t {
  True,
  False,
  Equal,
  Predicate,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
};

/// Immutable formula. And/Or are binary; use conjunction_of/disjunction_of
/// to build right-folded chains.
class Formula {
 public:
  static Formula truth(bool value);
  static Formula equal(Term lhs, Term rhs);
  static Formula predicate(PredId pred, std::vector<Term> args);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula forall(std::string variable, SortId sort, Formula body);
  static Formula exists(std::string variable, SortId sort, Formula body);

  /// Right fold; the list must be non-empty.
  static Formula conjunction_of(std::vector<Formula> operands);
  static Formula disjunction_of(std::vector<Formula> operands);

  FormulaKind kind() const;
  /// Equal: the two sides; Predicate: the arguments.
  const std::vector<Term>& terms() const;
  PredId pred() const;
  /// Not: one child; binary connectives: two; quantifiers: the body.
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i) const { return children().at(i); }
  const std::string& variable() const;
  SortId variable_sort() const;
  const Formula& body() const { return children().front(); }

  bool is_quantifier() const {
    return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists;
  }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Domain size per sort. Sort `s` has canonical values s!1..s!n.
struct DomainAssignment {
  std::vector<std::uint32_t> sizes;

  std::uint32_t size(SortId sort) const { return sizes.at(to_index(sort)); }

  friend bool operator==(const DomainAssignment&, const DomainAssignment&) = default;
};

struct Problem {
  Signature signature;
  std::vector<Formula> formulas;
  DomainAssignment domains;

  std::uint32_t domain_size(SortId sort) const { return domains.size(sort); }
  bool is_pure() const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

/// Function tables and predicate relations. A symbol's table is indexed by
/// the lexicographic rank of its argument tuple (first argument most
/// significant). Function cells hold zero-based result indices; predicate
/// cells hold 0 or 1.
struct Interpretation {
  std::vector<std::vector<std::uint32_t>> functions;
  std::vector<std::vector<std::uint8_t>> predicates;

  friend auto operator<=>(const Interpretation&, const Interpretation&) = default;
};

struct SortError {
  std::string subterm;
  std::string message;
};

/// Every violation of term formation and closedness, in traversal order.
std::vector<SortError> check_well_sorted(const Problem& problem);

using Environment = std::map<std::string, Value, std::less<>>;

/// Truth value of `formula` under `interp`, with free variables bound by
/// `env`. Throws std::invalid_argument on an unbound variable and
/// ShapeError on an interpretation that does not fit the problem.
bool evaluate(const Problem& problem, const Formula& formula, const Interpretation& interp,
              const Environment& env = {});

bool satisfies(const Problem& problem, const Interpretation& interp);

/// Domain values appearing syntactically in the formulas, per sort.
using OccurringValues = std::vector<std::set<std::uint32_t>>;

OccurringValues collect_occurring_values(const Problem& problem);
OccurringValues collect_occurring_values(const Signature& signature,
                                         std::span<const Formula> formulas);

/// Replace each free occurrence of `variable` by `value`.
Formula substitute(const Formula& formula, std::string_view variable, const Term& value);

/// Expand every quantifier into the finite conjunction or disjunction over
/// its sort's values. Throws std::length_error when the output would exceed
/// `max_nodes` formula nodes.
Problem ground(const Problem& problem, std::size_t max_nodes = 1'000'000);

std::size_t formula_size(const Formula& formula);

}  // namespace msfmf

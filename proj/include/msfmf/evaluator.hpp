#pragma once

// Compiled evaluation of closed formulas. Formulas are flattened once into
// index-based nodes with variables resolved to environment slots, so that
// checking millions of interpretations does no name lookups.

#include <cstdint>
#include <span>
#include <vector>

#include "msfmf/logic.hpp"

namespace msfmf {

/// Table geometry of every symbol under a domain assignment.
class InterpretationShape {
 public:
  struct Symbol {
    std::vector<std::uint32_t> arg_sizes;
    /// Result domain size for functions, 2 for predicates.
    std::uint32_t range = 0;
    std::uint64_t cells = 1;
  };

  InterpretationShape(const Signature& signature, const DomainAssignment& domains);

  const Symbol& func(FuncId f) const { return funcs_.at(to_index(f)); }
  const Symbol& pred(PredId p) const { return preds_.at(to_index(p)); }
  const std::vector<Symbol>& funcs() const { return funcs_; }
  const std::vector<Symbol>& preds() const { return preds_; }

  static std::uint64_t cell_of(const Symbol& symbol, std::span<const std::uint32_t> args);
  static std::vector<std::uint32_t> args_of(const Symbol& symbol, std::uint64_t cell);

  bool fits(const Interpretation& interp) const;
  /// Throws ShapeError when `interp` does not fit.
  void require_fit(const Interpretation& interp) const;
  /// Every function cell at value 0, every relation empty.
  Interpretation blank() const;

 private:
  std::vector<Symbol> funcs_;
  std::vector<Symbol> preds_;
};

enum class Truth : std::uint8_t { False, True, Unknown };

/// Sentinel for an unassigned function cell in a partial interpretation.
inline constexpr std::uint32_t kUnassignedValue = UINT32_MAX;
/// Sentinel for an unassigned predicate cell in a partial interpretation.
inline constexpr std::uint8_t kUnassignedTruth = 2;

class Evaluator {
 public:
  /// Compiles the problem's own formulas.
  explicit Evaluator(const Problem& problem);
  Evaluator(const Problem& problem, std::span<const Formula> formulas);
  /// Compiles one formula whose free variables are bound, in order, by the
  /// given (name, sort) pairs.
  Evaluator(const Problem& problem, const Formula& formula,
            std::span<const std::pair<std::string, SortId>> free_variables);

  std::size_t size() const { return roots_.size(); }

  bool holds(std::size_t i, const Interpretation& interp,
             std::span<const std::uint32_t> free_values = {}) const;
  bool holds_all(const Interpretation& interp) const;
  /// Kleene evaluation over a partial interpretation; Unknown when the
  /// verdict depends on unassigned cells.
  Truth holds_partial(std::size_t i, const Interpretation& partial) const;

 private:
  enum class Op : std::uint8_t {
    Var, Elem, Apply,
    True, False, Equal, Pred, Not, And, Or, Implies, Iff, Forall, Exists,
  };
  struct Node {
    Op op{};
    std::uint32_t a = 0;      // child / slot / value / symbol
    std::uint32_t b = 0;      // second child / quantified sort size
    std::uint32_t c = 0;      // quantifier body
    std::uint32_t first = 0;  // first argument in arg_pool_
    std::uint32_t count = 0;  // argument count
  };

  std::uint32_t compile_term(const Term& term, std::vector<std::string>& scope);
  std::uint32_t compile_formula(const Formula& formula, std::vector<std::string>& scope);

  template <bool Partial>
  std::uint32_t eval_term(std::uint32_t node, const Interpretation& interp,
                          std::uint32_t* env) const;
  template <bool Partial>
  Truth eval_formula(std::uint32_t node, const Interpretation& interp, std::uint32_t* env) const;

  InterpretationShape shape_;
  std::vector<std::uint32_t> sort_sizes_;
  std::vector<std::vector<std::uint64_t>> func_strides_;
  std::vector<std::vector<std::uint64_t>> pred_strides_;
  std::vector<Node> terms_;
  std::vector<Node> formulas_;
  std::vector<std::uint32_t> arg_pool_;
  std::vector<std::uint32_t> roots_;
  std::size_t free_count_ = 0;
  std::size_t max_depth_ = 0;
};

}  // namespace msfmf

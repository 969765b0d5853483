#pragma once

// Finite CSPs over bindings, their microstructure complement, and the flat
// and functional CSP encodings of a problem.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "msfmf/logic.hpp"
#include "msfmf/oracle.hpp"

namespace msfmf {

/// Value index per variable.
using Assignment = std::vector<std::uint32_t>;

struct CspVariable {
  std::string name;
  std::uint64_t size = 0;
  /// Optional display labels, one per value.
  std::vector<std::string> labels;
};

class CspConstraint {
 public:
  using Test = std::function<bool(std::span<const std::uint32_t>)>;

  CspConstraint(std::string name, std::vector<std::size_t> scope,
                std::set<std::vector<std::uint32_t>> allowed);
  CspConstraint(std::string name, std::vector<std::size_t> scope, Test test);

  const std::string& name() const { return name_; }
  const std::vector<std::size_t>& scope() const { return scope_; }
  bool is_extensional() const { return !test_; }
  const std::set<std::vector<std::uint32_t>>& allowed() const { return allowed_; }
  /// `values` holds one value per scope position.
  bool allows(std::span<const std::uint32_t> values) const;

 private:
  std::string name_;
  std::vector<std::size_t> scope_;
  std::set<std::vector<std::uint32_t>> allowed_;
  Test test_;
};

class Csp {
 public:
  std::size_t add_variable(std::string name, std::uint64_t size,
                           std::vector<std::string> labels = {});
  /// Throws std::invalid_argument on unknown scope variables or tuples
  /// outside the scope's domains.
  void add_constraint(CspConstraint constraint);

  const std::vector<CspVariable>& variables() const { return variables_; }
  const std::vector<CspConstraint>& constraints() const { return constraints_; }
  std::string value_label(std::size_t variable, std::uint32_t value) const;

  std::size_t binding_count() const { return offsets_.empty() ? 0 : offsets_.back(); }
  /// offset(x) + v.
  std::size_t binding(std::size_t variable, std::uint32_t value) const;
  std::pair<std::size_t, std::uint32_t> binding_at(std::size_t id) const;

  bool is_solution(const Assignment& assignment) const;

 private:
  std::vector<CspVariable> variables_;
  std::vector<CspConstraint> constraints_;
  /// Prefix sums of domain sizes, one past each variable.
  std::vector<std::size_t> offsets_{0};
};

/// Every satisfying complete assignment, first variable most significant.
/// Throws CapExceeded when the assignment space exceeds `cap`.
std::vector<Assignment> csp_solutions(const Csp& csp, std::uint64_t cap = kDefaultCap);

/// A bijection on binding ids.
class BindingPermutation {
 public:
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit BindingPermutation(std::vector<std::size_t> images);
  static BindingPermutation identity(std::size_t bindings);

  std::size_t operator()(std::size_t binding) const { return images_.at(binding); }
  const std::vector<std::size_t>& images() const { return images_; }
  bool is_identity() const;
  /// outer ∘ inner.
  static BindingPermutation compose(const BindingPermutation& outer,
                                    const BindingPermutation& inner);

  friend bool operator==(const BindingPermutation&, const BindingPermutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// Image of the assignment's binding set, if it is again one binding per
/// variable.
std::optional<Assignment> apply_to_assignment(const Csp& csp, const BindingPermutation& perm,
                                              const Assignment& assignment);

enum class EdgeKind : std::uint8_t { Consistency, Constraint };

struct Hyperedge {
  EdgeKind kind{};
  /// Binding ids, ascending and distinct.
  std::vector<std::size_t> bindings;
};

struct MicrostructureComplement {
  std::size_t vertices = 0;
  /// Consistency edges first, then constraint edges in constraint order;
  /// each binding set appears once.
  std::vector<Hyperedge> edges;

  bool has_edge(const std::vector<std::size_t>& sorted_bindings) const;
  /// No edge lies inside `bindings`.
  bool is_independent(std::span<const std::size_t> bindings) const;

 private:
  friend MicrostructureComplement microstructure_complement(const Csp&, std::uint64_t);
  std::set<std::vector<std::size_t>> index_;
};

/// Throws CapExceeded if expanding the constraints visits more than `cap`
/// scope tuples.
MicrostructureComplement microstructure_complement(const Csp& csp,
                                                   std::uint64_t cap = kDefaultCap);

/// Binding ids of a complete assignment.
std::vector<std::size_t> bindings_of(const Csp& csp, const Assignment& assignment);

bool is_solution_symmetry(const Csp& csp, const BindingPermutation& perm,
                          std::uint64_t cap = kDefaultCap);
/// Automorphism of the microstructure complement.
bool is_constraint_symmetry(const Csp& csp, const BindingPermutation& perm,
                            std::uint64_t cap = kDefaultCap);

/// One variable per function or predicate cell (predicate cells over F, T)
/// and one constraint per formula, scoped over every cell of the symbols it
/// mentions.
Csp flat_csp(const Problem& problem);

/// One variable per symbol ranging over all its tables, encoded mixed radix
/// with the first cell most significant. Throws CapExceeded when a table
/// space exceeds `cap`.
Csp functional_csp(const Problem& problem, std::uint64_t cap = kDefaultCap);

Assignment functional_assignment(const Problem& problem, const Interpretation& interp);
Interpretation interpretation_of(const Problem& problem, const Assignment& assignment);

/// σ^F on the bindings of functional_csp(problem): each symbol keeps its
/// variable and its table is transformed by σ. Throws ShapeError if σ does
/// not fit.
BindingPermutation functional_extension(const Problem& problem, const DomainPermutation& sigma,
                                        std::uint64_t cap = kDefaultCap);

}  // namespace msfmf

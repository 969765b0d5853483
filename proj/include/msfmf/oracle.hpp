#pragma once

// Exhaustive ground truth over the finite interpretation space: enumeration,
// satisfiability, domain permutations acting on interpretations and formulas,
// symmetry groups, orbits and completeness of symmetry-breaking constraints.
//
// Interpretations are ranked in a fixed mixed-radix order: function cells
// (declaration order, argument tuples lexicographic) then predicate cells,
// the first cell most significant, values ascending (false before true).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msfmf/evaluator.hpp"
#include "msfmf/logic.hpp"

namespace msfmf {

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

/// One permutation per sort, stored as zero-based image arrays.
class DomainPermutation {
 public:
  DomainPermutation() = default;
  /// Throws std::invalid_argument unless every array is a bijection.
  explicit DomainPermutation(std::vector<std::vector<std::uint32_t>> images);

  static DomainPermutation identity(const DomainAssignment& domains);
  /// Identity everywhere except `sort`, where `images` is used.
  static DomainPermutation on_sort(const DomainAssignment& domains, SortId sort,
                                   std::vector<std::uint32_t> images);

  std::uint32_t apply(SortId sort, std::uint32_t index) const {
    return images_[to_index(sort)][index];
  }
  Value apply(Value v) const { return Value{v.sort, apply(v.sort, v.index)}; }
  const std::vector<std::uint32_t>& on(SortId sort) const { return images_.at(to_index(sort)); }
  const std::vector<std::vector<std::uint32_t>>& images() const { return images_; }

  bool fits(const DomainAssignment& domains) const;
  bool is_identity() const;
  DomainPermutation inverse() const;
  /// outer ∘ inner: apply `inner` first.
  static DomainPermutation compose(const DomainPermutation& outer, const DomainPermutation& inner);

  friend auto operator<=>(const DomainPermutation&, const DomainPermutation&) = default;

 private:
  std::vector<std::vector<std::uint32_t>> images_;
};

/// Cycle notation per non-identity sort, e.g. `A:(1 3 2) B:(1 2)`; `id` for
/// the identity.
std::string format_permutation(const Signature& signature, const DomainPermutation& sigma);

/// Every domain permutation, sorts varying with the last sort fastest.
/// Throws CapExceeded when the product of factorials exceeds `cap`.
std::vector<DomainPermutation> all_domain_permutations(const DomainAssignment& domains,
                                                       std::uint64_t cap = kDefaultCap);
/// A transposition and a full cycle per sort of size >= 2.
std::vector<DomainPermutation> domain_permutation_generators(const DomainAssignment& domains);
/// All permutations of `sort` that act as the identity outside `values`.
std::vector<DomainPermutation> permutations_solely_on(const DomainAssignment& domains, SortId sort,
                                                      std::span<const std::uint32_t> values);

class InterpretationSpace {
 public:
  InterpretationSpace(const Signature& signature, const DomainAssignment& domains);
  explicit InterpretationSpace(const Problem& problem)
      : InterpretationSpace(problem.signature, problem.domains) {}

  const InterpretationShape& shape() const { return shape_; }
  /// Exact size in decimal, however large.
  const std::string& exact_size() const { return exact_size_; }
  /// Size when it fits in 64 bits.
  std::optional<std::uint64_t> size() const { return size_; }
  /// Throws CapExceeded with the exact size.
  std::uint64_t require_within(std::uint64_t cap) const;

  std::size_t cell_count() const { return cells_.size(); }
  Interpretation at(std::uint64_t index) const;
  std::uint64_t index_of(const Interpretation& interp) const;

  /// Visits every interpretation in rank order. `fn` returns false to stop.
  void for_each(std::uint64_t cap,
                const std::function<bool(std::uint64_t, const Interpretation&)>& fn) const;

 private:
  struct Cell {
    bool predicate = false;
    std::uint32_t symbol = 0;
    std::uint64_t cell = 0;
    std::uint32_t radix = 0;
  };

  InterpretationShape shape_;
  std::vector<Cell> cells_;
  std::string exact_size_;
  std::optional<std::uint64_t> size_;
};

std::vector<Interpretation> enumerate_interpretations(const Problem& problem,
                                                      std::uint64_t cap = kDefaultCap);

struct SatResult {
  bool satisfiable = false;
  std::optional<Interpretation> witness;
  std::uint64_t examined = 0;
};

/// First model in rank order. Throws CapExceeded.
SatResult is_satisfiable(const Problem& problem, std::uint64_t cap = kDefaultCap);

/// Throws ShapeError if `sigma` or `interp` do not fit the problem.
Interpretation apply_to_interpretation(const DomainPermutation& sigma, const Problem& problem,
                                       const Interpretation& interp);
std::vector<Formula> apply_to_formulas(const DomainPermutation& sigma,
                                       std::span<const Formula> formulas);
Formula apply_to_formula(const DomainPermutation& sigma, const Formula& formula);

/// satisfies(σ•I) = satisfies(I) for every interpretation I.
bool is_domain_symmetry(const DomainPermutation& sigma, const Problem& problem,
                        std::uint64_t cap = kDefaultCap);
/// σ•Γ = Γ as sets, under strict structural formula equality.
bool is_constraint_domain_symmetry(const DomainPermutation& sigma, const Problem& problem);

std::vector<DomainPermutation> domain_symmetries(const Problem& problem,
                                                 std::uint64_t cap = kDefaultCap);
std::uint64_t domain_symmetry_group_size(const Problem& problem, std::uint64_t cap = kDefaultCap);

struct Orbit {
  /// Interpretation ranks, ascending.
  std::vector<std::uint64_t> members;
  bool satisfies = false;
};

struct OrbitPartition {
  /// Ordered by smallest member.
  std::vector<Orbit> orbits;
  std::uint64_t group_order = 0;
  std::uint64_t space = 0;
};

/// Orbits of the whole interpretation space under the problem's
/// domain-symmetry group.
OrbitPartition orbit_partition(const Problem& problem, std::uint64_t cap = kDefaultCap);

enum class CompletenessMode : std::uint8_t {
  /// Every orbit of models holds a model that also satisfies the constraints.
  ModelOrbits,
  /// Every orbit, models or not, holds a member satisfying the constraints.
  AllOrbits,
};

struct CompletenessResult {
  bool complete = true;
  /// A violating orbit; one containing models is preferred.
  std::optional<Orbit> counterexample;
  std::size_t orbits = 0;
  std::size_t model_orbits = 0;
};

/// `constraints` are formulas over the problem's signature, in addition to Γ.
CompletenessResult check_symmetry_breaking_completeness(
    const Problem& problem, std::span<const Formula> constraints, std::uint64_t cap = kDefaultCap,
    CompletenessMode mode = CompletenessMode::ModelOrbits);

/// Every permutation solely permuting `values` of `sort` is a domain symmetry.
bool interchangeable_set_oracle(const Problem& problem, SortId sort,
                                std::span<const std::uint32_t> values,
                                std::uint64_t cap = kDefaultCap);

// ---------------------------------------------------------------------------
// Backtracking search, for spaces beyond the enumeration cap.

struct SearchResult {
  /// Models in rank order.
  std::vector<Interpretation> models;
  /// False when the node budget ran out before the space was exhausted.
  bool complete = true;
  std::uint64_t nodes = 0;
};

/// Assigns cells in rank order and prunes any branch on which some formula
/// is already false. Stops after `max_models` models.
SearchResult search_models(const Problem& problem, std::uint64_t max_models,
                           std::uint64_t node_cap = 100'000'000);

/// Partition of `models` into orbits under the group generated by
/// `generators`. Throws std::invalid_argument if the set is not closed.
std::vector<std::vector<std::size_t>> orbits_among(const Problem& problem,
                                                   std::span<const Interpretation> models,
                                                   std::span<const DomainPermutation> generators);

}  // namespace msfmf

#pragma once

// Static symmetry-breaking constraints and their sound combination.
//
// Every scheme consumes values from a per-sort ledger of values known to be
// interchangeable. A value leaves the ledger as soon as it occurs in Γ or in
// an emitted constraint, in any sort, so each scheme only ever relies on
// values that are still absent from every formula.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msfmf/errors.hpp"
#include "msfmf/logic.hpp"

namespace msfmf {

enum class SchemeKind : std::uint8_t { Constants, UnaryRange, DrdRange, UnaryPredicate, BinaryPredicate };

/// `constants`, `unary-range`, `drd-range`, `unary-pred`, `binary-pred`.
std::string_view scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme_kind(std::string_view name);

struct InterchangeabilityLedger {
  /// Per sort, ascending zero-based values.
  std::vector<std::vector<std::uint32_t>> values;
  /// Binary predicates already broken, with their pivot index.
  std::map<std::size_t, std::uint32_t> pivots;

  const std::vector<std::uint32_t>& of(SortId sort) const { return values.at(to_index(sort)); }
  bool is_full(SortId sort, const DomainAssignment& domains) const {
    return of(sort).size() == domains.size(sort);
  }
  /// Drops every value that occurs in `occurring`.
  void remove(const OccurringValues& occurring);

  friend bool operator==(const InterchangeabilityLedger&, const InterchangeabilityLedger&) = default;
};

/// `A: [A!2 A!3]; B: []`
std::string format_ledger(const Signature& signature, const InterchangeabilityLedger& ledger);

/// A scheme whose preconditions fail against the current ledger.
class SchemeError : public Error {
 public:
  SchemeError(const std::string& message, InterchangeabilityLedger ledger)
      : Error(message), ledger_(std::move(ledger)) {}
  const InterchangeabilityLedger& ledger() const { return ledger_; }

 private:
  InterchangeabilityLedger ledger_;
};

struct SchemeApplication {
  SchemeKind kind{};
  std::vector<std::string> targets;
  std::vector<Formula> formulas;
  InterchangeabilityLedger before;
  InterchangeabilityLedger after;
  std::vector<std::string> warnings;
};

/// Values of each sort that do not occur in Γ.
InterchangeabilityLedger initial_ledger(const Problem& problem);

/// Ordered constant constraints over the ledger of `sort`, with disjuncts
/// for every value outside the ledger. Canonicity constraints are added only
/// while the ledger still covers the whole domain.
SchemeApplication constants_scheme(const Problem& problem, SortId sort,
                                   const std::vector<FuncId>& constants,
                                   const InterchangeabilityLedger& ledger);
/// Ordered range constraints for f: A -> A. Needs the full ledger of A.
SchemeApplication unary_range_scheme(const Problem& problem, FuncId f,
                                     const InterchangeabilityLedger& ledger);
/// Strong ordered range constraints for a function whose result sort is
/// none of its argument sorts. Argument tuples are taken in row-major order.
SchemeApplication drd_range_scheme(const Problem& problem, FuncId f,
                                   const InterchangeabilityLedger& ledger);
/// Q(d_i) => Q(d_{i-1}) over the ledger of Q's sort.
SchemeApplication unary_predicate_scheme(const Problem& problem, PredId q,
                                         const InterchangeabilityLedger& ledger);
/// Q(pivot, b_j) => Q(pivot, b_{j-1}) for Q: A x B, A != B. Needs the full
/// ledger of B; one pivot per predicate.
SchemeApplication binary_predicate_scheme(const Problem& problem, PredId q, std::uint32_t pivot,
                                          const InterchangeabilityLedger& ledger);

struct SchemeRequest {
  SchemeKind kind{};
  /// Sort of the constants; empty to take the first constant's sort.
  std::string sort;
  std::vector<std::string> symbols;
  /// Binary predicates: pivot literal, e.g. `A!1`.
  std::string pivot;
  /// Reject unless the relevant ledger is the whole domain.
  bool full_domain = false;

  friend bool operator==(const SchemeRequest&, const SchemeRequest&) = default;
};

/// One request per line, e.g. `(constants A c1 c2)`, `(drd-range f)`,
/// `(unary-pred P :full)`, `(binary-pred Q A!1)`, `(unary-range g)`.
std::vector<SchemeRequest> parse_plan(std::string_view text);
std::string format_request(const SchemeRequest& request);

struct CombineResult {
  Problem problem;
  std::vector<SchemeApplication> trail;
  InterchangeabilityLedger ledger;
};

/// Runs the plan in order, appending every emitted formula to Γ. Throws
/// SchemeError, with the ledger at the failing step, on any inapplicable
/// request.
CombineResult combine(const Problem& problem, const std::vector<SchemeRequest>& plan);

/// Constants per sort, then DRD functions by descending argument space, then
/// unary predicates, binary predicates whose second sort is untouched, and
/// f: A -> A while A is untouched. Always accepted by combine.
std::vector<SchemeRequest> default_plan(const Problem& problem);

/// `; scheme <kind> <symbols> consumed <values|none>`
std::string audit_line(const Signature& signature, const SchemeApplication& application);

}  // namespace msfmf

#pragma once

// Sort inference: split every sort into the finest sorting that keeps the
// problem well-sorted, with the sort substitution back to the original as a
// checkable witness.

#include <map>
#include <string>
#include <vector>

#include "msfmf/logic.hpp"

namespace msfmf {

/// Finite map between sort names; names without an entry map to themselves.
/// Applied as one simultaneous substitution.
struct SortSubstitution {
  std::map<std::string, std::string> mapping;

  const std::string& operator()(const std::string& sort) const {
    auto it = mapping.find(sort);
    return it == mapping.end() ? sort : it->second;
  }
  bool is_identity() const;

  friend bool operator==(const SortSubstitution&, const SortSubstitution&) = default;
};

struct GeneralizationWitness {
  Problem generalized;
  /// Generalized sort -> original sort.
  SortSubstitution eta;
  /// Original sort -> the sorts it was split into, when more than one.
  std::map<std::string, std::vector<std::string>> splits;
};

/// Rewrites every sort occurrence. Sorts merged by `eta` must share a domain
/// size; the resulting sort list is ordered by first appearance of each
/// target. Throws std::invalid_argument on a size conflict or an ill-sorted
/// result.
Problem apply_substitution(const SortSubstitution& eta, const Problem& problem);

/// Union-find over sort slots: argument and result positions of every
/// symbol, every quantifier binding and every domain-element occurrence.
/// Each resulting class becomes a sort; a sort that splits yields `S_1`,
/// `S_2`, ... in order of first slot.
GeneralizationWitness infer_sorts(const Problem& problem);

struct WitnessCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

WitnessCheck verify_witness(const Problem& original, const GeneralizationWitness& witness);

/// `(subst (A_1 A) (A_2 A))`, identity pairs omitted.
std::string format_substitution(const SortSubstitution& eta);

}  // namespace msfmf

#pragma once

// Line-oriented S-expression text format for problems and interpretations.
//
//   (sort A 3)
//   (const c A)
//   (func f (A B) A)
//   (pred P (A B))
//   (assert (forall ((x A) (y B)) (not (= (f x y) c))))
//
// Domain literals are written `Sort!k` with 1 <= k <= size. Interpretations
// list `(value f A!1 B!2 A!3)` per function cell (result last) and
// `(holds P A!1 B!1)` per true predicate tuple. `;` starts a comment.

#include <string>
#include <string_view>

#include "msfmf/logic.hpp"

namespace msfmf {

/// Throws ParseError with the line and column of the first problem found.
Problem parse_problem(std::string_view text);
std::string print_problem(const Problem& problem);

Interpretation parse_interpretation(const Problem& problem, std::string_view text);
std::string print_interpretation(const Problem& problem, const Interpretation& interp);

std::string format_value(const Signature& signature, Value value);
std::string format_term(const Signature& signature, const Term& term);
std::string format_formula(const Signature& signature, const Formula& formula);

/// Parses a single `Sort!k` literal against the problem's sorts.
Value parse_value(const Problem& problem, std::string_view literal);

}  // namespace msfmf

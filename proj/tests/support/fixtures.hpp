#pragma once

// Worked example problems shared by the unit and acceptance tests.

#include <string>

#include "msfmf/logic.hpp"
#include "msfmf/problem_io.hpp"

namespace msfmf::testing {

inline Problem parse(const std::string& text) { return parse_problem(text); }

/// Two sorts, a constant of each, f: A -> B and P: A x B.
inline const char* kTwoSorts = R"(
(sort A 3)
(sort B 2)
(const c A)
(const d B)
(func f (A) B)
(pred P (A B))
(assert (forall ((x B)) (P c x)))
(assert (exists ((y A)) (= (f y) d)))
)";

/// c = A!1, d = B!2, f constant B!2, P = {(1,1), (1,2), (3,2)}.
inline const char* kTwoSortsModel = R"(
(value c A!1)
(value d B!2)
(value f A!1 B!2)
(value f A!2 B!2)
(value f A!3 B!2)
(holds P A!1 B!1)
(holds P A!1 B!2)
(holds P A!3 B!2)
)";

/// The same model moved by A: 1->3, 2->1, 3->2 and B: 1<->2.
inline const char* kTwoSortsImage = R"(
(value c A!3)
(value d B!1)
(value f A!1 B!1)
(value f A!2 B!1)
(value f A!3 B!1)
(holds P A!3 B!2)
(holds P A!3 B!1)
(holds P A!2 B!1)
)";

inline const char* kCombination = R"(
(sort A 3)
(const c A)
(pred P (A))
(assert (and (not (P c)) (exists ((x A)) (P x))))
)";

inline const char* kConstantsExample = R"(
(sort A 5)
(sort B 2)
(const c1 A)
(const c2 A)
(func f (B) A)
(pred P (A))
(assert (P A!3))
(assert (= (f B!1) A!4))
)";

inline const char* kDrdExample = R"(
(sort A 6)
(sort B 2)
(sort C 2)
(const x A)
(func f (B C) A)
(assert (= x A!1))
(assert (= (f B!1 C!1) A!1))
(assert (not (= (f B!2 C!1) (f B!2 C!2))))
(assert (= (f B!1 C!1) (f B!2 C!2)))
)";

inline const char* kSingleSort = R"(
(sort U 3)
(const c1 U)
(const c2 U)
(func f (U) U)
(assert (not (= (f c1) c2)))
(assert (forall ((x U)) (not (= (f x) c2))))
)";

inline const char* kGroupCount = R"(
(sort A 3)
(sort B 2)
(const c A)
(func f (A B) A)
(assert (forall ((x A) (y B)) (not (= (f x y) c))))
)";

inline const char* kGroupCountResorted = R"(
(sort A 3)
(sort B 2)
(sort C 3)
(const c C)
(func f (A B) C)
(assert (forall ((x A) (y B)) (not (= (f x y) c))))
)";

inline std::string latin_square(unsigned n) {
  std::string s = "(sort N " + std::to_string(n) + ")\n(func f (N N) N)\n";
  s += "(assert (forall ((x N) (y N) (z N)) (=> (not (= y z)) (not (= (f x y) (f x z))))))\n";
  s += "(assert (forall ((x N) (y N) (z N)) (=> (not (= x y)) (not (= (f x z) (f y z))))))\n";
  return s;
}

}  // namespace msfmf::testing

#include <gtest/gtest.h>

#include "msfmf/oracle.hpp"
#include "msfmf/problem_io.hpp"
#include "msfmf/symbreak.hpp"
#include "support/fixtures.hpp"

namespace msfmf {

void PrintTo(const SchemeRequest& request, std::ostream* os) { *os << format_request(request); }

namespace {

using testing::parse;

std::vector<std::string> texts(const Problem& p, const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(format_formula(p.signature, f));
  return out;
}

FuncId func(const Problem& p, const char* name) { return *p.signature.find_func(name); }
PredId pred(const Problem& p, const char* name) { return *p.signature.find_pred(name); }
SortId sort(const Problem& p, const char* name) { return *p.signature.find_sort(name); }

TEST(Ledger, Initial) {
  Problem pure = parse(testing::kTwoSorts);
  EXPECT_EQ(format_ledger(pure.signature, initial_ledger(pure)), "A: [A!1 A!2 A!3]; B: [B!1 B!2]");
  Problem ext = parse(testing::kConstantsExample);
  EXPECT_EQ(format_ledger(ext.signature, initial_ledger(ext)), "A: [A!1 A!2 A!5]; B: [B!2]");
  Problem pinned = parse("(sort A 3) (const c A) (assert (= c A!1))");
  EXPECT_EQ(format_ledger(pinned.signature, initial_ledger(pinned)), "A: [A!2 A!3]");
}

TEST(Ledger, ValuesAreInterchangeable) {
  for (const char* text : {testing::kConstantsExample, testing::kDrdExample}) {
    Problem p = parse(text);
    auto ledger = initial_ledger(p);
    for (std::size_t s = 0; s < ledger.values.size(); ++s)
      EXPECT_TRUE(interchangeable_set_oracle(p, SortId(s), ledger.values[s]));
  }
}

TEST(Constants, PureThreeConstants) {
  Problem p = parse("(sort A 3) (const c1 A) (const c2 A) (const c3 A)");
  auto app = constants_scheme(p, sort(p, "A"), {func(p, "c1"), func(p, "c2"), func(p, "c3")},
                              initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{
                "(= c1 A!1)",
                "(or (= c2 A!1) (= c2 A!2))",
                "(or (= c3 A!1) (= c3 A!2) (= c3 A!3))",
                "(=> (= c2 A!2) (= c1 A!1))",
                "(=> (= c3 A!2) (or (= c1 A!1) (= c2 A!1)))",
                "(=> (= c3 A!3) (or (= c1 A!2) (= c2 A!2)))",
            }));
  EXPECT_EQ(format_ledger(p.signature, app.after), "A: []");
}

TEST(Constants, ExtendedExample) {
  Problem p = parse(testing::kConstantsExample);
  auto app = constants_scheme(p, sort(p, "A"), {func(p, "c1"), func(p, "c2")}, initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{
                "(or (= c1 A!1) (= c1 A!3) (= c1 A!4))",
                "(or (= c2 A!1) (= c2 A!2) (= c2 A!3) (= c2 A!4))",
            }));
}

TEST(Constants, SingleValueDomain) {
  Problem p = parse("(sort A 1) (const c A)");
  auto app = constants_scheme(p, sort(p, "A"), {func(p, "c")}, initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas), (std::vector<std::string>{"(= c A!1)"}));
}

TEST(Constants, Preconditions) {
  Problem p = parse("(sort A 2) (sort B 2) (const c A) (func f (A) A)");
  auto ledger = initial_ledger(p);
  EXPECT_THROW(constants_scheme(p, sort(p, "B"), {func(p, "c")}, ledger), SchemeError);
  EXPECT_THROW(constants_scheme(p, sort(p, "A"), {func(p, "f")}, ledger), SchemeError);
  EXPECT_THROW(constants_scheme(p, sort(p, "A"), {}, ledger), SchemeError);
}

TEST(Constants, MoreConstantsThanValues) {
  Problem p = parse("(sort A 2) (const c1 A) (const c2 A) (const c3 A)");
  auto app = constants_scheme(p, sort(p, "A"), {func(p, "c1"), func(p, "c2"), func(p, "c3")},
                              initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{"(= c1 A!1)", "(or (= c2 A!1) (= c2 A!2))",
                                      "(=> (= c2 A!2) (= c1 A!1))"}));
  EXPECT_EQ(app.warnings.size(), 1u);
}

TEST(UnaryRange, ThreeValues) {
  Problem p = parse("(sort A 3) (func f (A) A)");
  auto app = unary_range_scheme(p, func(p, "f"), initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{"(or (= (f A!1) A!1) (= (f A!1) A!2))",
                                      "(or (= (f A!2) A!1) (= (f A!2) A!2) (= (f A!2) A!3))"}));
}

TEST(UnaryRange, SingleValueEmitsNothing) {
  Problem p = parse("(sort A 1) (func f (A) A)");
  EXPECT_TRUE(unary_range_scheme(p, func(p, "f"), initial_ledger(p)).formulas.empty());
}

TEST(UnaryRange, PartialLedgerIsInapplicable) {
  Problem p = parse("(sort A 3) (const c A) (func f (A) A)");
  CombineResult after = combine(p, parse_plan("(constants A c)"));
  try {
    unary_range_scheme(after.problem, func(p, "f"), after.ledger);
    FAIL();
  } catch (const SchemeError& e) {
    EXPECT_NE(std::string(e.what()).find("scheme inapplicable"), std::string::npos);
    EXPECT_EQ(e.ledger(), after.ledger);
  }
}

TEST(UnaryRange, ForcedOnPartialLedgerLosesAnOrbit) {
  // What unary-range would emit over the remaining values A!2, A!3 if it
  // ignored the precondition: f(A!2) in {A!2, A!3}, next to c = A!1.
  Problem p = parse("(sort A 3) (const c A) (func f (A) A)");
  Problem forced = parse(
      "(sort A 3) (const c A) (func f (A) A) (assert (= c A!1))"
      "(assert (or (= (f A!2) A!2) (= (f A!2) A!3)))");
  auto r = check_symmetry_breaking_completeness(p, forced.formulas, kDefaultCap,
                                                CompletenessMode::AllOrbits);
  EXPECT_FALSE(r.complete);
}

TEST(Drd, UnaryFunction) {
  Problem p = parse("(sort A 2) (sort B 2) (func f (A) B)");
  auto app = drd_range_scheme(p, func(p, "f"), initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{"(= (f A!1) B!1)", "(or (= (f A!2) B!1) (= (f A!2) B!2))"}));
}

TEST(Drd, ExtendedExample) {
  Problem p = parse(testing::kDrdExample);
  auto app = drd_range_scheme(p, func(p, "f"), initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{
                "(or (= (f B!1 C!1) A!2) (= (f B!1 C!1) A!1))",
                "(or (= (f B!1 C!2) A!2) (= (f B!1 C!2) A!3) (= (f B!1 C!2) A!1))",
                "(or (= (f B!2 C!1) A!2) (= (f B!2 C!1) A!3) (= (f B!2 C!1) A!4) (= (f B!2 C!1) A!1))",
                "(or (= (f B!2 C!2) A!2) (= (f B!2 C!2) A!3) (= (f B!2 C!2) A!4) (= (f B!2 C!2) A!5) "
                "(= (f B!2 C!2) A!1))",
            }));
}

TEST(Drd, LatinNine) {
  Problem p = parse("(sort R 9) (sort C 9) (sort E 9) (func f (R C) E)");
  auto app = drd_range_scheme(p, func(p, "f"), initial_ledger(p));
  ASSERT_EQ(app.formulas.size(), 9u);
  EXPECT_EQ(format_formula(p.signature, app.formulas[0]), "(= (f R!1 C!1) E!1)");
  EXPECT_EQ(format_formula(p.signature, app.formulas[1]), "(or (= (f R!1 C!2) E!1) (= (f R!1 C!2) E!2))");
  EXPECT_EQ(app.formulas[8].kind(), FormulaKind::Or);
}

TEST(Drd, Preconditions) {
  Problem p = parse("(sort A 2) (sort B 2) (const c B) (func g (A B) B)");
  auto ledger = initial_ledger(p);
  EXPECT_THROW(drd_range_scheme(p, func(p, "c"), ledger), SchemeError);
  EXPECT_THROW(drd_range_scheme(p, func(p, "g"), ledger), SchemeError);
}

TEST(UnaryPredicate, SixValues) {
  Problem p = parse("(sort A 6) (pred P (A))");
  auto app = unary_predicate_scheme(p, pred(p, "P"), initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas),
            (std::vector<std::string>{"(=> (P A!2) (P A!1))", "(=> (P A!3) (P A!2))",
                                      "(=> (P A!4) (P A!3))", "(=> (P A!5) (P A!4))",
                                      "(=> (P A!6) (P A!5))"}));
}

TEST(UnaryPredicate, AfterConstant) {
  Problem p = parse(testing::kCombination);
  CombineResult r = combine(p, parse_plan("(constants A c)"));
  auto app = unary_predicate_scheme(r.problem, pred(p, "P"), r.ledger);
  EXPECT_EQ(texts(p, app.formulas), (std::vector<std::string>{"(=> (P A!3) (P A!2))"}));
}

TEST(UnaryPredicate, SingleLedgerValue) {
  Problem p = parse("(sort A 2) (pred P (A)) (assert (P A!1))");
  auto app = unary_predicate_scheme(p, pred(p, "P"), initial_ledger(p));
  EXPECT_TRUE(app.formulas.empty());
  EXPECT_EQ(app.warnings.size(), 1u);
}

TEST(BinaryPredicate, PivotOne) {
  Problem p = parse("(sort A 2) (sort B 2) (pred Q (A B))");
  auto app = binary_predicate_scheme(p, pred(p, "Q"), 0, initial_ledger(p));
  EXPECT_EQ(texts(p, app.formulas), (std::vector<std::string>{"(=> (Q A!1 B!2) (Q A!1 B!1))"}));
  EXPECT_EQ(app.after.pivots.at(0), 0u);
}

TEST(BinaryPredicate, SingletonSecondSort) {
  Problem p = parse("(sort A 2) (sort B 1) (pred Q (A B))");
  EXPECT_TRUE(binary_predicate_scheme(p, pred(p, "Q"), 0, initial_ledger(p)).formulas.empty());
}

TEST(BinaryPredicate, SecondPivotRejected) {
  Problem p = parse("(sort A 2) (sort B 2) (pred Q (A B))");
  auto first = binary_predicate_scheme(p, pred(p, "Q"), 0, initial_ledger(p));
  EXPECT_THROW(binary_predicate_scheme(p, pred(p, "Q"), 1, first.after), SchemeError);
}

TEST(BinaryPredicate, TwoPivotsLoseAnOrbit) {
  Problem p = parse("(sort A 2) (sort B 2) (pred Q (A B))");
  Problem both = parse(
      "(sort A 2) (sort B 2) (pred Q (A B))"
      "(assert (=> (Q A!1 B!2) (Q A!1 B!1))) (assert (=> (Q A!2 B!2) (Q A!2 B!1)))");
  auto r = check_symmetry_breaking_completeness(p, both.formulas, kDefaultCap,
                                                CompletenessMode::AllOrbits);
  ASSERT_FALSE(r.complete);
  // The orbit of {(a1,b1),(a2,b2)} has no member meeting both constraints.
  Interpretation diag = parse_interpretation(p, "(holds Q A!1 B!1) (holds Q A!2 B!2)");
  auto rank = InterpretationSpace(p).index_of(diag);
  const auto& members = r.counterexample->members;
  EXPECT_NE(std::find(members.begin(), members.end(), rank), members.end());
}

TEST(BinaryPredicate, Preconditions) {
  Problem p = parse("(sort A 2) (sort B 2) (pred Q (A A)) (pred R (A B)) (assert (R A!1 B!1))");
  auto ledger = initial_ledger(p);
  EXPECT_THROW(binary_predicate_scheme(p, pred(p, "Q"), 0, ledger), SchemeError);
  EXPECT_THROW(binary_predicate_scheme(p, pred(p, "R"), 0, ledger), SchemeError);
}

TEST(Plan, ParseAndFormat) {
  auto plan = parse_plan(
      "; comment\n(constants A c1 c2)\n(drd-range f)\n(unary-pred P :full)\n(binary-pred Q A!1)\n"
      "(unary-range g)\n");
  ASSERT_EQ(plan.size(), 5u);
  EXPECT_EQ(plan[0], (SchemeRequest{SchemeKind::Constants, "A", {"c1", "c2"}, "", false}));
  EXPECT_TRUE(plan[2].full_domain);
  EXPECT_EQ(plan[3].pivot, "A!1");
  std::string text;
  for (const auto& r : plan) text += format_request(r) + "\n";
  EXPECT_EQ(parse_plan(text), plan);
  EXPECT_THROW(parse_plan("(shuffle f)"), ParseError);
  EXPECT_THROW(parse_plan("(drd-range f g)"), ParseError);
  EXPECT_THROW(parse_plan("(drd-range f"), ParseError);
}

TEST(Combine, CombinationExample) {
  Problem p = parse(testing::kCombination);
  CombineResult r = combine(p, parse_plan("(constants A c) (unary-pred P)"));
  std::vector<Formula> added(r.problem.formulas.begin() + 1, r.problem.formulas.end());
  EXPECT_EQ(texts(p, added), (std::vector<std::string>{"(= c A!1)", "(=> (P A!3) (P A!2))"}));
  EXPECT_TRUE(is_satisfiable(r.problem).satisfiable);
  EXPECT_EQ(audit_line(p.signature, r.trail[0]), "; scheme constants c consumed A!1");
  EXPECT_EQ(audit_line(p.signature, r.trail[1]), "; scheme unary-pred P consumed A!2 A!3");
}

TEST(Combine, FullDomainRequestRejected) {
  Problem p = parse(testing::kCombination);
  try {
    combine(p, parse_plan("(constants A c) (unary-pred P :full)"));
    FAIL();
  } catch (const SchemeError& e) {
    EXPECT_NE(std::string(e.what()).find("scheme inapplicable"), std::string::npos);
    EXPECT_EQ(format_ledger(p.signature, e.ledger()), "A: [A!2 A!3]");
  }
}

TEST(Combine, EmptyPlan) {
  Problem p = parse(testing::kCombination);
  CombineResult r = combine(p, {});
  EXPECT_EQ(r.problem, p);
  EXPECT_TRUE(r.trail.empty());
}

TEST(Combine, UnknownSymbols) {
  Problem p = parse(testing::kCombination);
  EXPECT_THROW(combine(p, parse_plan("(drd-range g)")), SchemeError);
  EXPECT_THROW(combine(p, parse_plan("(unary-pred Q)")), SchemeError);
  EXPECT_THROW(combine(p, parse_plan("(constants Z c)")), SchemeError);
}

TEST(Combine, LedgerNeverHoldsOccurringValues) {
  Problem p = parse(testing::kConstantsExample);
  CombineResult r = combine(p, default_plan(p));
  auto occ = collect_occurring_values(r.problem);
  for (std::size_t s = 0; s < r.ledger.values.size(); ++s)
    for (auto v : r.ledger.values[s]) EXPECT_FALSE(occ[s].contains(v));
}

TEST(DefaultPlan, Examples) {
  Problem comb = parse(testing::kCombination);
  EXPECT_EQ(default_plan(comb), parse_plan("(constants A c) (unary-pred P)"));
  Problem latin = parse("(sort R 4) (sort C 4) (sort E 4) (func f (R C) E)");
  EXPECT_EQ(default_plan(latin), parse_plan("(drd-range f)"));
  EXPECT_TRUE(default_plan(parse("(sort A 2)")).empty());
  EXPECT_TRUE(default_plan(parse(testing::latin_square(4))).empty());
}

TEST(DefaultPlan, PrefersLargerArgumentSpaces) {
  Problem p = parse("(sort A 2) (sort B 3) (sort C 8) (func g (A) C) (func h (A B) C)");
  EXPECT_EQ(default_plan(p), parse_plan("(drd-range h) (drd-range g)"));
}

}  // namespace
}  // namespace msfmf

#include <gtest/gtest.h>

#include "msfmf/errors.hpp"
#include "msfmf/oracle.hpp"
#include "msfmf/problem_io.hpp"
#include "support/fixtures.hpp"
#include "support/random_problems.hpp"

namespace msfmf {
namespace {

using testing::parse;

std::uint64_t count_space(const Problem& p) { return enumerate_interpretations(p).size(); }

TEST(Space, Counts) {
  EXPECT_EQ(count_space(parse("(sort A 3) (sort B 2) (func f (A) B)")), 8u);
  EXPECT_EQ(count_space(parse("(sort A 4) (const c A)")), 4u);
  Problem p = parse(testing::kCombination);
  EXPECT_EQ(count_space(p), 24u);
  EXPECT_EQ(InterpretationSpace(p).exact_size(), "24");
}

TEST(Space, RankRoundTrip) {
  Problem p = parse(testing::kTwoSorts);
  InterpretationSpace space(p);
  for (std::uint64_t r = 0; r < *space.size(); r += 37) EXPECT_EQ(space.index_of(space.at(r)), r);
}

TEST(Space, CapExceeded) {
  Problem p = parse(testing::latin_square(4));
  try {
    enumerate_interpretations(p, 1000);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.space(), "4294967296");
  }
}

TEST(Satisfiable, CombinationExample) {
  std::string base = testing::kCombination;
  EXPECT_TRUE(is_satisfiable(parse(base)).satisfiable);
  EXPECT_FALSE(is_satisfiable(parse(base + "(assert (= c A!1)) (assert (=> (P A!3) (P A!2))) "
                                            "(assert (=> (P A!2) (P A!1)))"))
                   .satisfiable);
}

TEST(Satisfiable, EmptyGammaFirstInterpretation) {
  Problem p = parse("(sort A 2) (const c A)");
  SatResult r = is_satisfiable(p);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, InterpretationSpace(p).at(0));
}

TEST(Action, TwoSortExample) {
  Problem p = parse(testing::kTwoSorts);
  Interpretation i = parse_interpretation(p, testing::kTwoSortsModel);
  DomainPermutation sigma({{2, 0, 1}, {1, 0}});
  Interpretation image = apply_to_interpretation(sigma, p, i);
  EXPECT_EQ(image, parse_interpretation(p, testing::kTwoSortsImage));
  EXPECT_EQ(apply_to_interpretation(DomainPermutation::identity(p.domains), p, i), i);
  EXPECT_EQ(format_permutation(p.signature, sigma), "A:(1 3 2) B:(1 2)");
}

TEST(Action, CompositionIsAction) {
  testing::RandomProblems gen(3, {.max_space = 2000});
  for (int n = 0; n < 30; ++n) {
    Problem p = gen.problem();
    auto perms = all_domain_permutations(p.domains);
    auto space = enumerate_interpretations(p);
    for (std::size_t k = 0; k < 10; ++k) {
      const auto& s = perms[gen.uniform(0, static_cast<std::uint32_t>(perms.size() - 1))];
      const auto& g = perms[gen.uniform(0, static_cast<std::uint32_t>(perms.size() - 1))];
      const auto& i = space[gen.uniform(0, static_cast<std::uint32_t>(space.size() - 1))];
      EXPECT_EQ(apply_to_interpretation(DomainPermutation::compose(s, g), p, i),
                apply_to_interpretation(s, p, apply_to_interpretation(g, p, i)));
    }
  }
}

TEST(Action, Formulas) {
  Problem p = parse("(sort A 3) (const c A) (assert (= c A!1))");
  auto swap = DomainPermutation::on_sort(p.domains, SortId{0}, {1, 0, 2});
  EXPECT_EQ(format_formula(p.signature, apply_to_formula(swap, p.formulas[0])), "(= c A!2)");

  Problem pure = parse(testing::kTwoSorts);
  DomainPermutation sigma({{2, 0, 1}, {1, 0}});
  EXPECT_EQ(apply_to_formulas(sigma, pure.formulas), pure.formulas);

  Problem ext = parse(testing::kConstantsExample);
  auto swap34 = DomainPermutation::on_sort(ext.domains, SortId{0}, {0, 1, 3, 2, 4});
  Problem moved = ext;
  moved.formulas = apply_to_formulas(swap34, ext.formulas);
  Problem expected = parse(
      "(sort A 5) (sort B 2) (const c1 A) (const c2 A) (func f (B) A) (pred P (A))"
      "(assert (P A!4)) (assert (= (f B!1) A!3))");
  EXPECT_EQ(parse_problem(print_problem(moved)), expected);
}

TEST(DomainSymmetry, PureProblemsAcceptEveryPermutation) {
  Problem p = parse(testing::kTwoSorts);
  for (const auto& s : all_domain_permutations(p.domains)) EXPECT_TRUE(is_domain_symmetry(s, p));
}

TEST(DomainSymmetry, PinnedConstantRejectsSwap) {
  Problem p = parse(std::string(testing::kCombination) + "(assert (= c A!1))");
  auto swap = DomainPermutation::on_sort(p.domains, SortId{0}, {1, 0, 2});
  EXPECT_FALSE(is_domain_symmetry(swap, p));
  auto fixing = DomainPermutation::on_sort(p.domains, SortId{0}, {0, 2, 1});
  EXPECT_TRUE(is_domain_symmetry(fixing, p));
}

TEST(DomainSymmetry, OccurrenceFixingPermutationsOnRandomProblems) {
  testing::RandomProblems gen(5, {.max_space = 3000});
  for (int n = 0; n < 40; ++n) {
    Problem p = gen.problem();
    auto occ = collect_occurring_values(p);
    for (const auto& s : all_domain_permutations(p.domains)) {
      bool fixes = true;
      for (std::size_t k = 0; k < occ.size(); ++k)
        for (auto v : occ[k]) fixes = fixes && s.on(SortId(k))[v] == v;
      if (fixes) {
        EXPECT_TRUE(is_domain_symmetry(s, p)) << print_problem(p);
      }
    }
  }
}

TEST(ConstraintDomainSymmetry, Examples) {
  Problem pure = parse(testing::kTwoSorts);
  DomainPermutation sigma({{2, 0, 1}, {1, 0}});
  EXPECT_TRUE(is_constraint_domain_symmetry(sigma, pure));

  Problem disj = parse("(sort A 2) (pred P (A)) (assert (or (P A!1) (P A!2)))");
  auto swap = DomainPermutation::on_sort(disj.domains, SortId{0}, {1, 0});
  EXPECT_FALSE(is_constraint_domain_symmetry(swap, disj));

  Problem atom = parse("(sort A 2) (pred P (A)) (assert (P A!1))");
  EXPECT_FALSE(is_constraint_domain_symmetry(swap, atom));

  Problem both = parse("(sort A 2) (pred P (A)) (assert (P A!1)) (assert (P A!2))");
  EXPECT_TRUE(is_constraint_domain_symmetry(swap, both));
}

TEST(Groups, Counts) {
  EXPECT_EQ(domain_symmetry_group_size(parse(testing::kGroupCount)), 12u);
  EXPECT_EQ(domain_symmetry_group_size(parse(testing::kGroupCountResorted)), 72u);
  Problem pinned = parse(
      "(sort A 2) (sort B 2) (const a1 A) (const a2 A) (const b1 B) (const b2 B)"
      "(assert (= a1 A!1)) (assert (= a2 A!2)) (assert (= b1 B!1)) (assert (= b2 B!2))");
  EXPECT_EQ(domain_symmetry_group_size(pinned), 1u);
}

TEST(Orbits, Examples) {
  auto sizes = [](const OrbitPartition& op) {
    std::vector<std::size_t> out;
    for (const auto& o : op.orbits) out.push_back(o.members.size());
    return out;
  };
  EXPECT_EQ(sizes(orbit_partition(parse("(sort A 3) (const c A)"))), (std::vector<std::size_t>{3}));
  EXPECT_EQ(sizes(orbit_partition(parse("(sort A 2) (pred P (A))"))),
            (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(sizes(orbit_partition(parse("(sort A 2)"))), (std::vector<std::size_t>{1}));
}

TEST(Orbits, MembersShareSatisfaction) {
  testing::RandomProblems gen(8, {.max_space = 3000});
  for (int n = 0; n < 40; ++n) {
    Problem p = gen.problem();
    InterpretationSpace space(p);
    for (const auto& o : orbit_partition(p).orbits)
      for (auto r : o.members) ASSERT_EQ(satisfies(p, space.at(r)), o.satisfies);
  }
}

TEST(Completeness, OrderedConstantsOnThreeConstants) {
  Problem p = parse("(sort A 3) (const c1 A) (const c2 A) (const c3 A)");
  Problem c = parse(
      "(sort A 3) (const c1 A) (const c2 A) (const c3 A)"
      "(assert (= c1 A!1)) (assert (or (= c2 A!1) (= c2 A!2)))"
      "(assert (or (= c3 A!1) (= c3 A!2) (= c3 A!3)))"
      "(assert (=> (= c2 A!2) (= c1 A!1)))"
      "(assert (=> (= c3 A!2) (or (= c1 A!1) (= c2 A!1))))"
      "(assert (=> (= c3 A!3) (or (= c1 A!2) (= c2 A!2))))");
  auto r = check_symmetry_breaking_completeness(p, c.formulas, kDefaultCap, CompletenessMode::AllOrbits);
  EXPECT_TRUE(r.complete);
}

TEST(Completeness, OverCombinedHasCounterexample) {
  Problem p = parse(testing::kCombination);
  Problem c = parse(std::string(testing::kCombination) +
                    "(assert (= c A!1)) (assert (=> (P A!3) (P A!2))) (assert (=> (P A!2) (P A!1)))");
  std::vector<Formula> extra(c.formulas.begin() + 1, c.formulas.end());
  auto r = check_symmetry_breaking_completeness(p, extra);
  EXPECT_FALSE(r.complete);
  ASSERT_TRUE(r.counterexample);
  EXPECT_TRUE(r.counterexample->satisfies);
}

TEST(Completeness, EmptyConstraints) {
  Problem p = parse(testing::kCombination);
  EXPECT_TRUE(check_symmetry_breaking_completeness(p, {}, kDefaultCap, CompletenessMode::AllOrbits)
                  .complete);
}

TEST(Interchangeable, Examples) {
  Problem p = parse(testing::kConstantsExample);
  std::vector<std::uint32_t> free_a = {0, 1, 4};
  EXPECT_TRUE(interchangeable_set_oracle(p, SortId{0}, free_a));
  Problem pinned = parse("(sort A 3) (const c A) (pred P (A)) (assert (= c A!1))");
  std::vector<std::uint32_t> x = {0, 1};
  EXPECT_FALSE(interchangeable_set_oracle(pinned, SortId{0}, x));
  std::vector<std::uint32_t> y = {1, 2};
  EXPECT_TRUE(interchangeable_set_oracle(pinned, SortId{0}, y));
}

TEST(Search, AgreesWithEnumeration) {
  testing::RandomProblems gen(21, {.max_space = 5000});
  for (int n = 0; n < 60; ++n) {
    Problem p = gen.problem();
    std::vector<Interpretation> models;
    for (const auto& i : enumerate_interpretations(p))
      if (satisfies(p, i)) models.push_back(i);
    SearchResult r = search_models(p, UINT64_MAX);
    ASSERT_TRUE(r.complete);
    ASSERT_EQ(r.models, models) << print_problem(p);
  }
}

TEST(Search, OrbitsAmongModelsMatchPartition) {
  Problem p = parse(testing::kCombination);
  auto models = search_models(p, UINT64_MAX).models;
  auto gens = domain_permutation_generators(p.domains);
  auto orbits = orbits_among(p, models, gens);
  std::size_t model_orbits = 0;
  for (const auto& o : orbit_partition(p).orbits) model_orbits += o.satisfies;
  EXPECT_EQ(orbits.size(), model_orbits);
}

}  // namespace
}  // namespace msfmf

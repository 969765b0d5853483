#include <gtest/gtest.h>

#include "msfmf/oracle.hpp"
#include "msfmf/problem_io.hpp"
#include "msfmf/sort_infer.hpp"
#include "msfmf/symbreak.hpp"
#include "support/random_problems.hpp"

namespace msfmf {
namespace {

TEST(Property, LedgerStaysInterchangeableThroughAutoPlans) {
  testing::RandomProblems gen(101, {.max_space = 5000});
  for (int n = 0; n < 150; ++n) {
    Problem p = gen.problem();
    CombineResult r = combine(p, default_plan(p));
    for (const auto& app : r.trail) {
      for (std::size_t s = 0; s < app.after.values.size(); ++s) {
        ASSERT_TRUE(interchangeable_set_oracle(p, SortId(s), app.after.values[s])) << print_problem(p);
      }
    }
  }
}

TEST(Property, AutoPlansKeepAModelInEveryModelOrbit) {
  testing::RandomProblems gen(102, {.max_space = 5000});
  int constrained = 0;
  for (int n = 0; n < 600; ++n) {
    Problem p = gen.problem();
    CombineResult r = combine(p, default_plan(p));
    std::vector<Formula> added(r.problem.formulas.begin() + static_cast<std::ptrdiff_t>(p.formulas.size()),
                               r.problem.formulas.end());
    constrained += !added.empty();
    auto result = check_symmetry_breaking_completeness(p, added);
    ASSERT_TRUE(result.complete) << print_problem(r.problem);
  }
  EXPECT_GT(constrained, 80);
}

TEST(Property, PureAutoPlansAreCompleteOnEveryOrbit) {
  testing::RandomProblems gen(103, {.elements = false, .max_space = 5000});
  for (int n = 0; n < 150; ++n) {
    Problem p = gen.problem();
    CombineResult r = combine(p, default_plan(p));
    std::vector<Formula> added(r.problem.formulas.begin() + static_cast<std::ptrdiff_t>(p.formulas.size()),
                               r.problem.formulas.end());
    auto result = check_symmetry_breaking_completeness(p, added, kDefaultCap, CompletenessMode::AllOrbits);
    ASSERT_TRUE(result.complete) << print_problem(r.problem);
  }
}

TEST(Property, InferThenBreakPreservesSatisfiability) {
  testing::RandomProblems gen(104, {.max_sorts = 1, .max_space = 20'000});
  for (int n = 0; n < 150; ++n) {
    Problem p = gen.problem();
    Problem g = infer_sorts(p).generalized;
    Problem b = combine(g, default_plan(g)).problem;
    ASSERT_EQ(is_satisfiable(p).satisfiable, is_satisfiable(b).satisfiable) << print_problem(b);
  }
}

TEST(Property, SymmetriesFormAGroup) {
  testing::RandomProblems gen(105, {.max_space = 2000});
  for (int n = 0; n < 40; ++n) {
    Problem p = gen.problem();
    auto group = domain_symmetries(p);
    std::set<DomainPermutation> members(group.begin(), group.end());
    ASSERT_TRUE(members.contains(DomainPermutation::identity(p.domains)));
    for (const auto& a : group) {
      ASSERT_TRUE(members.contains(a.inverse()));
      for (const auto& b : group) ASSERT_TRUE(members.contains(DomainPermutation::compose(a, b)));
    }
  }
}

TEST(Property, ConstraintDomainSymmetriesAreDomainSymmetries) {
  testing::RandomProblems gen(106, {.max_space = 3000});
  for (int n = 0; n < 60; ++n) {
    Problem p = gen.problem();
    for (const auto& sigma : all_domain_permutations(p.domains))
      if (is_constraint_domain_symmetry(sigma, p)) ASSERT_TRUE(is_domain_symmetry(sigma, p));
  }
}

TEST(Property, OrbitSizesDivideGroupOrder) {
  testing::RandomProblems gen(107, {.max_space = 3000});
  for (int n = 0; n < 40; ++n) {
    Problem p = gen.problem();
    auto op = orbit_partition(p);
    std::uint64_t total = 0;
    for (const auto& o : op.orbits) {
      ASSERT_EQ(op.group_order % o.members.size(), 0u);
      total += o.members.size();
    }
    ASSERT_EQ(total, op.space);
  }
}

TEST(Property, GroundingPreservesSatisfiability) {
  testing::RandomProblems gen(108, {.max_space = 5000});
  for (int n = 0; n < 100; ++n) {
    Problem p = gen.problem();
    Problem g = ground(p);
    for (const auto& f : g.formulas) {
      std::string text = format_formula(g.signature, f);
      ASSERT_EQ(text.find("forall"), std::string::npos);
      ASSERT_EQ(text.find("exists"), std::string::npos);
    }
    for (const auto& i : enumerate_interpretations(p)) ASSERT_EQ(satisfies(p, i), satisfies(g, i));
  }
}

}  // namespace
}  // namespace msfmf

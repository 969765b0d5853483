#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "msfmf/cli.hpp"
#include "msfmf/oracle.hpp"
#include "msfmf/problem_io.hpp"
#include "support/fixtures.hpp"

namespace msfmf {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("msfmf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, CheckValid) {
  Outcome r = run({"check", file("p.msf", testing::kTwoSorts)});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("status: ok"), std::string::npos);
  EXPECT_NE(r.out.find("space: 3072"), std::string::npos);
}

TEST_F(CliTest, CheckIllSorted) {
  Outcome r = run({"check", file("bad.msf", "(sort A 2)\n(sort B 2)\n(const c A)\n(assert (= c B!1))\n")});
  EXPECT_EQ(r.code, kExitDiagnostic);
  EXPECT_NE(r.err.find("bad.msf:4:"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckMissingFile) {
  EXPECT_EQ(run({"check", path("nope.msf")}).code, kExitIo);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitIo);
  EXPECT_EQ(run({"frobnicate"}).code, kExitIo);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, InferSplitsSingleSort) {
  Outcome r = run({"infer", file("p.msf", testing::kSingleSort), "--verify"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "; (subst (U_1 U) (U_2 U))\n"
            "(sort U_1 3)\n(sort U_2 3)\n(const c1 U_1)\n(const c2 U_2)\n(func f (U_1) U_2)\n"
            "(assert (not (= (f c1) c2)))\n(assert (forall ((x U_1)) (not (= (f x) c2))))\n");
  EXPECT_NE(r.err.find("witness-valid: yes"), std::string::npos);
  EXPECT_NE(r.err.find("sat-preserved: yes"), std::string::npos);
}

TEST_F(CliTest, InferAlreadyGeneral) {
  std::string input = file("p.msf", testing::kGroupCountResorted);
  Outcome r = run({"infer", input, "--out", path("out.msf")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("witness: (subst)"), std::string::npos) << r.out;
  EXPECT_EQ(parse_problem(slurp(path("out.msf"))), parse_problem(testing::kGroupCountResorted));
}

TEST_F(CliTest, InferLatin) {
  Outcome r = run({"infer", file("latin.msf", testing::latin_square(9))});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(parse_problem(r.out).signature.sort_count(), 3u);
}

TEST_F(CliTest, BreakAutoCombination) {
  Outcome r = run({"break", file("p.msf", testing::kCombination), "--verify"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("(assert (= c A!1))\n(assert (=> (P A!3) (P A!2)))\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("; scheme constants c consumed A!1"), std::string::npos);
  EXPECT_NE(r.err.find("complete: yes"), std::string::npos);
}

TEST_F(CliTest, BreakLatinNine) {
  std::string latin = "(sort R 9) (sort C 9) (sort E 9) (func f (R C) E)";
  Outcome r = run({"break", file("latin.msf", latin)});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(parse_problem(r.out).formulas.size(), 9u);
  EXPECT_NE(r.err.find("constraints: 9"), std::string::npos);
}

TEST_F(CliTest, BreakOverCombinedPlan) {
  Outcome r = run({"break", file("p.msf", testing::kCombination), "--plan",
               file("plan", "(constants A c)\n(unary-pred P :full)\n")});
  EXPECT_EQ(r.code, kExitDiagnostic);
  EXPECT_NE(r.err.find("scheme inapplicable"), std::string::npos);
  EXPECT_NE(r.err.find("ledger: A: [A!2 A!3]"), std::string::npos);
}

TEST_F(CliTest, SolveVerdicts) {
  Outcome sat = run({"solve", file("p.msf", testing::kCombination), "--witness", path("w.txt")});
  EXPECT_EQ(sat.code, kExitOk);
  EXPECT_NE(sat.out.find("verdict: SAT"), std::string::npos);
  Problem p = parse_problem(testing::kCombination);
  EXPECT_TRUE(satisfies(p, parse_interpretation(p, slurp(path("w.txt")))));

  Outcome unsat = run({"solve", file("q.msf", std::string(testing::kCombination) +
                                              "(assert (= c A!1)) (assert (=> (P A!3) (P A!2)))"
                                              "(assert (=> (P A!2) (P A!1)))")});
  EXPECT_EQ(unsat.code, kExitUnsat);
  EXPECT_NE(unsat.out.find("verdict: UNSAT"), std::string::npos);

  Outcome big = run({"solve", file("l.msf", testing::latin_square(4)), "--cap", "1000"});
  EXPECT_EQ(big.code, kExitIo);
  EXPECT_NE(big.out.find("space: 4294967296"), std::string::npos);

  Outcome search = run({"solve", file("l.msf", testing::latin_square(4)), "--search"});
  EXPECT_EQ(search.code, kExitOk);
  EXPECT_NE(search.err.find("verdict: SAT"), std::string::npos);
}

TEST_F(CliTest, Orbits) {
  Outcome r = run({"orbits", file("p.msf", "(sort A 2) (pred P (A))")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("classes: 3"), std::string::npos);
  EXPECT_NE(r.out.find("class 2: size 2"), std::string::npos);
  EXPECT_NE(run({"orbits", file("c.msf", "(sort A 3) (const c A)")}).out.find("classes: 1"),
            std::string::npos);
  EXPECT_NE(run({"orbits", file("e.msf", "(sort A 3)")}).out.find("class 1: size 1"),
            std::string::npos);
}

TEST_F(CliTest, Ground) {
  Outcome r = run({"ground", file("p.msf", "(sort A 2) (pred P (A)) (assert (forall ((x A)) (P x)))")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("(assert (and (P A!1) (P A!2)))"), std::string::npos);
  Outcome guard = run({"ground", file("l.msf", testing::latin_square(4)), "--max-size", "20"});
  EXPECT_EQ(guard.code, kExitDiagnostic);
}

TEST_F(CliTest, Csp) {
  Outcome r = run({"csp", file("p.msf", testing::kTwoSorts), "--verify"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("flat-variables: 11"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("functional-variables: 4"), std::string::npos);
  EXPECT_NE(r.out.find("extensions-are-solution-symmetries: yes"), std::string::npos);
}

TEST_F(CliTest, Deterministic) {
  std::string input = file("p.msf", testing::kSingleSort);
  for (const char* cmd : {"check", "infer", "break", "solve", "orbits", "ground", "csp"}) {
    Outcome a = run({cmd, input});
    Outcome b = run({cmd, input});
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_EQ(a.err, b.err) << cmd;
    EXPECT_EQ(a.out.find("elapsed"), std::string::npos);
  }
  EXPECT_NE(run({"--timing", "check", input}).out.find("elapsed-ms"), std::string::npos);
}

TEST_F(CliTest, PipelinePreservesVerdict) {
  for (const std::string text : {std::string(testing::kCombination), std::string(testing::kSingleSort),
                                 std::string(testing::kTwoSorts), std::string(testing::kDrdExample)}) {
    std::string input = file("p.msf", text);
    ASSERT_EQ(run({"infer", input, "--out", path("i.msf")}).code, kExitOk);
    ASSERT_EQ(run({"break", path("i.msf"), "--out", path("b.msf")}).code, kExitOk);
    EXPECT_EQ(run({"solve", path("b.msf"), "--search"}).code, run({"solve", input, "--search"}).code)
        << text;
  }
}

}  // namespace
}  // namespace msfmf

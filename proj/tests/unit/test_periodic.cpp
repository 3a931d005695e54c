#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shuffle/errors.hpp"
#include "shuffle/periodic.hpp"

namespace shuffle {
namespace {

PeriodicInstance inst(const char* w, const char* w1, std::size_t k, const char* w2, std::size_t l) {
  return PeriodicInstance(Word(w), Word(w1), k, Word(w2), l);
}

std::size_t pipeline_size(const PeriodicInstance& p) {
  return minimize(subset_construction(GridNfa(p.u(), p.v()))).size();
}

// Closed form evaluated by hand in test code.
std::uint64_t expected_formula(std::uint64_t U, std::uint64_t V, std::uint64_t n, bool k_greater) {
  const std::uint64_t grid = (U + 1) * (V + 1) - V * (V + 1) / 2;
  if (!k_greater) return grid - (U - n) * (U - n + 1) / 2;
  for (std::uint64_t m = V + 1; m-- > 0;)
    if (m <= U && (U - m) % n == 0) return grid - m * (m + 1) / 2;
  return grid;
}

TEST(PeriodicInstance, BuildsWords) {
  const auto p = inst("abc", "bc", 2, "abc", 0);
  EXPECT_EQ(p.u(), Word("bcabcabc"));
  EXPECT_EQ(p.v(), Word("abc"));
  EXPECT_EQ(p.describe(), "w=abc w1=bc k=2 w2=abc l=0");
  EXPECT_THROW(inst("abc", "ab", 1, "c", 0), PreconditionError);
  EXPECT_THROW(inst("abc", "c", 0, "c", 1), PreconditionError);
  EXPECT_THROW(inst("", "", 1, "", 0), PreconditionError);
}

TEST(RecognizePeriodic, FindsTheExampleShape) {
  const auto found = recognize_periodic(Word("bcabcabc"), Word("abc"));
  ASSERT_FALSE(found.empty());
  EXPECT_NE(std::find(found.begin(), found.end(), inst("abc", "bc", 2, "abc", 0)), found.end());
}

TEST(PeriodChange, ExampleAndWitness) {
  const auto p = inst("ab", "", 3, "", 0);
  const InclusionVerdict v = check_period_change_inclusion(p, 2, 1);
  EXPECT_TRUE(v.subset);
  EXPECT_TRUE(v.proper);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(oracle::member(v.witness->str(), v.u_prime.str(), v.v_prime.str()));
  EXPECT_FALSE(oracle::member(v.witness->str(), v.u.str(), v.v.str()));
  ASSERT_TRUE(v.proof_witness);
  EXPECT_TRUE(oracle::member(v.proof_witness->str(), v.u_prime.str(), v.v_prime.str()));
  EXPECT_FALSE(oracle::member(v.proof_witness->str(), v.u.str(), v.v.str()));
  EXPECT_TRUE(v.passed());
}

TEST(PeriodChange, ProofTrajectoryShape) {
  // With |w1| >= |w2| and k' >= l' the trajectory is 0^q (01)^{|w2|+l'n} 0^{(k'-l')n}.
  const auto p = inst("abc", "bc", 4, "c", 1);
  const Trajectory t = period_change_witness_trajectory(p, 3, 2);
  const std::size_t q = 1, pairs = 1 + 2 * 3, tail = (3 - 2) * 3;
  std::string expected(q, '0');
  for (std::size_t x = 0; x < pairs; ++x) expected += "01";
  expected.append(tail, '0');
  EXPECT_EQ(t.str(), expected);
}

TEST(PeriodChange, HypothesisViolations) {
  EXPECT_THROW(check_period_change_inclusion(inst("ab", "", 3, "", 0), 3, 0), PreconditionError);
  EXPECT_THROW(check_period_change_inclusion(inst("ab", "b", 3, "", 0), 2, 1), PreconditionError);
  EXPECT_THROW(check_period_change_inclusion(inst("aa", "", 3, "", 0), 2, 1), PreconditionError);
  EXPECT_THROW(check_period_change_inclusion(inst("ab", "", 4, "", 0), 2, 1), PreconditionError);
}

TEST(PeriodNonchange, Example) {
  const InclusionVerdict v = check_period_nonchange_inclusion(inst("ab", "ab", 2, "b", 0));
  EXPECT_TRUE(v.subset);
  EXPECT_TRUE(v.proper);
  EXPECT_EQ(v.u_prime, Word("babab"));
  EXPECT_EQ(v.v_prime, Word("ab"));
}

TEST(PeriodNonchange, EmptyW2IsAdmitted) {
  EXPECT_TRUE(check_period_nonchange_inclusion(inst("abc", "c", 2, "", 1)).passed());
}

TEST(PeriodNonchange, HypothesisViolations) {
  EXPECT_THROW(check_period_nonchange_inclusion(inst("ab", "b", 2, "b", 0)), PreconditionError);
  EXPECT_THROW(check_period_nonchange_inclusion(inst("ab", "ab", 1, "b", 1)), PreconditionError);
}

TEST(Residuals, EqualityOnSwappedCoordinates) {
  const auto p = inst("ab", "", 3, "", 1);
  const ResidualVerdict v = residual_inclusion(p, 1, 2, 2, 1);
  EXPECT_TRUE(v.expected_equal);
  EXPECT_TRUE(v.equal);
  EXPECT_TRUE(v.passed());
}

TEST(Residuals, StrictInclusionIsAntisymmetric) {
  const auto p = inst("ab", "", 3, "", 2);
  const ResidualVerdict v = residual_inclusion(p, 5, 1, 3, 3);
  EXPECT_TRUE(v.subset);
  EXPECT_FALSE(v.reverse_subset);
  EXPECT_FALSE(v.equal);
  EXPECT_TRUE(v.passed());
}

TEST(Residuals, ConditionViolationsNameTheCondition) {
  const auto p = inst("ab", "", 3, "", 1);
  try {
    residual_inclusion(p, 3, 1, 2, 2);
    FAIL() << "expected condition 3 to fail";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("condition 3"), std::string::npos);
  }
  EXPECT_THROW(residual_inclusion(p, 3, 1, 2, 1), PreconditionError);
  EXPECT_THROW(residual_inclusion(p, 0, 1, 1, 0), PreconditionError);
  EXPECT_THROW(residual_inclusion(p, 3, 3, 5, 1), PreconditionError);
}

TEST(Residuals, TableAgreesWithDirectCall) {
  const auto p = inst("abc", "c", 2, "bc", 1);
  const ResidualTable table(p);
  EXPECT_EQ(table.at(2, 1), enumerate_shuffle(p.u().suffix(2), p.v().suffix(1)));
  const auto a = residual_inclusion(table, 4, 1, 1, 4);
  const auto b = residual_inclusion(p, 4, 1, 1, 4);
  EXPECT_EQ(a.subset, b.subset);
  EXPECT_EQ(a.equal, b.equal);
}

TEST(FormulaSize, Examples) {
  EXPECT_EQ(formula_size(inst("abc", "bc", 2, "abc", 0)), 27u);
  EXPECT_EQ(formula_size(inst("ab", "ab", 2, "ab", 0)), 15u);
  EXPECT_THROW(formula_size(inst("abc", "abc", 0, "abc", 0)), PreconditionError);
  EXPECT_EQ(formula_m(8, 3, 3), 2u);
}

TEST(FormulaSize, AbsentMContributesNothing) {
  const auto p = inst("abc", "bc", 1, "c", 0);  // u = bcabc, v = c
  EXPECT_FALSE(formula_m(5, 1, 3));
  EXPECT_EQ(formula_size(p), expected_formula(5, 1, 3, true));
  EXPECT_EQ(formula_size(p), pipeline_size(p));
}

TEST(FormulaSize, OutOfScope) {
  EXPECT_THROW(formula_size(inst("abc", "c", 0, "c", 0)), PreconditionError);
  EXPECT_THROW(formula_size(inst("aba", "ba", 2, "a", 0)), PreconditionError);
  EXPECT_THROW(formula_size(inst("abc", "", 2, "c", 0)), PreconditionError);
  EXPECT_THROW(formula_size(inst("abc", "c", 1, "bc", 1)), PreconditionError);
}

TEST(FormulaSize, AgreesWithPipelineAndHandEvaluation) {
  for (const char* w : {"ab", "ba", "abc", "cab"}) {
    const Word base(w);
    for (std::size_t k = 0; k <= 3; ++k)
      for (std::size_t l = 0; l <= k; ++l)
        for (std::size_t a = 1; a <= base.size(); ++a)
          for (std::size_t b = 1; b <= base.size(); ++b) {
            const PeriodicInstance p(base, base.suffix(a), k, base.suffix(b), l);
            if (!formula_precondition_failure(p).empty()) continue;
            const auto got = formula_size(p);
            EXPECT_EQ(got, expected_formula(p.u().size(), p.v().size(), base.size(), k > l))
                << p.describe();
            EXPECT_EQ(got, pipeline_size(p)) << p.describe();
          }
  }
}

TEST(BuildPeriodicDfa, ExampleTwo) {
  const auto p = inst("abc", "bc", 2, "abc", 0);
  const Dfa d = build_periodic_dfa(p);
  EXPECT_EQ(d.size(), 27u);
  EXPECT_TRUE(equivalent(d, minimize(subset_construction(GridNfa(p.u(), p.v())))));
  EXPECT_EQ(minimize(d).size(), d.size());
}

TEST(BuildPeriodicDfa, LanguageMatchesOracle) {
  const auto p = inst("ab", "ab", 2, "ab", 0);
  const Dfa d = build_periodic_dfa(p);
  EXPECT_EQ(d.size(), 15u);
  std::set<std::string> got;
  for (const Word& z : dfa_language(d)) got.insert(std::string(z.str()));
  EXPECT_EQ(got, oracle::shuffle(std::string(p.u().str()), std::string(p.v().str())));
}

TEST(BuildPeriodicDfa, EachStagePreservesTheLanguage) {
  for (const auto& p : {inst("abc", "bc", 2, "abc", 0), inst("ab", "b", 3, "ab", 1),
                        inst("abc", "c", 2, "bc", 1), inst("ab", "b", 1, "b", 0)}) {
    const WordSet expected = enumerate_shuffle(p.u(), p.v());
    GridAutomaton a{GridNfa(p.u(), p.v())};
    a = prune_below_diagonal(std::move(a), p);
    EXPECT_EQ(a.language(), expected) << p.describe();
    a = prune_above_m_layer(std::move(a), p);
    EXPECT_EQ(a.language(), expected) << p.describe();
    a = determinize_interior(std::move(a), p);
    EXPECT_EQ(a.language(), expected) << p.describe();
    EXPECT_TRUE(a.is_deterministic());
    EXPECT_EQ(a.state_count(), formula_size(p));
  }
}

TEST(BuildPeriodicDfa, RequiresKGreaterThanL) {
  EXPECT_THROW(build_periodic_dfa(inst("abc", "abc", 1, "c", 1)), PreconditionError);
}

TEST(QuadraticBound, OneSectionPerLetter) {
  const auto report = check_quadratic_bound(inst("aabb", "aabb", 2, "aabb", 2));
  EXPECT_TRUE(report.within_bound());
  EXPECT_EQ(report.bound, 2u * 13 * 13);
  EXPECT_LE(report.ratio, 2.0);
}

TEST(QuadraticBound, NonRepeatingSubcaseMatchesFormula) {
  const auto report = check_quadratic_bound(inst("ab", "ab", 2, "ab", 0));
  ASSERT_TRUE(report.sizes.formula_prediction);
  EXPECT_EQ(*report.sizes.formula_prediction, report.sizes.minimal_dfa_states);
}

TEST(QuadraticBound, RejectsRepeatedSkeleton) {
  EXPECT_THROW(check_quadratic_bound(inst("aba", "ba", 2, "a", 1)), PreconditionError);
}

}  // namespace
}  // namespace shuffle

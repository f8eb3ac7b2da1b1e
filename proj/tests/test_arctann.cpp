#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "arctn/arctann.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace arctn;

namespace {

const double kC3 = oracle::kArctanConstant[3];
const double kC4 = oracle::kArctanConstant[4];

}  // namespace

TEST(EvalArctan, ClassicalCase) {
  const QuadratureConfig cfg = default_config(Order(2));
  EXPECT_NEAR(eval_arctan(Order(2), {1.0}, cfg).value, std::numbers::pi / 4, 1e-12);
  for (double u : {0.01, 0.5, 3.7, 42.0, 100.0}) {
    EXPECT_NEAR(eval_arctan(Order(2), {u}, cfg).value, std::atan(u), 1e-10) << "u = " << u;
  }
}

TEST(EvalArctan, OrderThreeAgainstNestedQuadratureOracle) {
  const QuadratureConfig cfg = default_config(Order(3));
  for (const auto& [u, v, want] : oracle::kArctan3) {
    const EvalResult r = eval_arctan(Order(3), {u, v}, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, want, 1e-9) << "u = " << u << ", v = " << v;
  }
}

TEST(EvalArctan, ZeroArgumentShortCircuits) {
  const EvalResult r = eval_arctan(Order(3), {0.0, 5.0}, default_config(Order(3)));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.error_estimate, 0.0);
  EXPECT_EQ(r.evals, 0);
  EXPECT_TRUE(r.converged);
}

TEST(EvalArctan, RejectsInvalidArguments) {
  const QuadratureConfig cfg = default_config(Order(3));
  EXPECT_THROW(eval_arctan(Order(3), {1.0}, cfg), std::domain_error);
  EXPECT_THROW(eval_arctan(Order(3), {1.0, -0.5}, cfg), std::domain_error);
  EXPECT_THROW(eval_arctan(Order(3), {1.0, std::nan("")}, cfg), std::domain_error);
  EXPECT_THROW(eval_arctan(Order(3), {1.0, INFINITY}, cfg), std::domain_error);
}

TEST(EvalArctan, RetriesWithLargerBudgetBeforeGivingUp) {
  QuadratureConfig cfg = default_config(Order(3));
  cfg.abs_tol = 1e-16;
  cfg.rel_tol = 0.0;
  cfg.max_evals = 1000;
  const EvalResult r = eval_arctan(Order(3), {1e-3, 1e3}, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.evals, cfg.max_evals);
  EXPECT_LE(r.evals, 5 * cfg.max_evals);
}

TEST(ReflectionArgs, Examples) {
  const Order three(3);
  const double u = 2.5, v = 0.4;
  const ArgVector p1 = reflection_args(three, {u, v}, 1);
  EXPECT_DOUBLE_EQ(p1[0], 1.0 / u);
  EXPECT_DOUBLE_EQ(p1[1], v / u);
  const ArgVector p2 = reflection_args(three, {u, v}, 2);
  EXPECT_DOUBLE_EQ(p2[0], u / v);
  EXPECT_DOUBLE_EQ(p2[1], 1.0 / v);
  EXPECT_TRUE(same_multiset(p2, ArgVector{1.0 / v, u / v}));
  const ArgVector classical = reflection_args(Order(2), {u}, 1);
  ASSERT_EQ(classical.size(), 1u);
  EXPECT_DOUBLE_EQ(classical[0], 1.0 / u);
}

TEST(ReflectionArgs, RejectsBadInput) {
  EXPECT_THROW(reflection_args(Order(3), {1.0, 2.0}, 0), std::domain_error);
  EXPECT_THROW(reflection_args(Order(3), {1.0, 2.0}, 3), std::domain_error);
  EXPECT_THROW(reflection_args(Order(3), {0.0, 2.0}, 1), std::domain_error);
}

TEST(FunctionalSum, Examples) {
  EXPECT_NEAR(functional_sum(Order(2), {1.0}, default_config(Order(2))).value, std::numbers::pi / 2, 1e-11);
  EXPECT_NEAR(functional_sum(Order(3), {1.0, 1.0}, default_config(Order(3))).value, kC3, 1e-9);
  const EvalResult four = functional_sum(Order(4), {2.0, 0.7, 1.3}, default_config(Order(4)));
  EXPECT_TRUE(four.converged);
  EXPECT_NEAR(four.value, kC4, 10.0 * four.error_estimate);
}

TEST(FunctionalSum, ErrorIsSumOfTerms) {
  const auto terms = functional_terms(Order(3), {0.7, 2.0}, default_config(Order(3)));
  ASSERT_EQ(terms.size(), 3u);
  const EvalResult sum = functional_sum(Order(3), {0.7, 2.0}, default_config(Order(3)));
  EXPECT_DOUBLE_EQ(sum.value, terms[0].value + terms[1].value + terms[2].value);
  EXPECT_DOUBLE_EQ(sum.error_estimate, terms[0].error_estimate + terms[1].error_estimate + terms[2].error_estimate);
}

TEST(FunctionalSum, FailingTermIsIdentified) {
  QuadratureConfig cfg = default_config(Order(5));
  cfg.method = Method::adaptive;
  cfg.max_evals = 1000;  // below the cost of one 4-D tensor rule
  try {
    functional_sum(Order(5), {1.0, 2.0, 3.0, 4.0}, cfg);
    FAIL() << "expected TermFailure";
  } catch (const TermFailure& e) {
    EXPECT_EQ(e.term(), 0u);
    EXPECT_NE(std::string(e.what()).find("term 0"), std::string::npos);
  }
  EXPECT_THROW(functional_sum(Order(3), {0.0, 1.0}, default_config(Order(3))), std::domain_error);
}

TEST(FunctionalResidual, Examples) {
  EXPECT_LE(std::abs(functional_residual(Order(2), {3.7}, default_config(Order(2)))), 1e-11);
  EXPECT_LE(std::abs(functional_residual(Order(3), {0.4, 9.0}, default_config(Order(3)))), 1e-7);
  EXPECT_LE(std::abs(functional_residual(Order(3), {1e-3, 1e3}, default_config(Order(3)))), 1e-6);
}

TEST(UnitCubeValue, MatchesGammaClosedForm) {
  EXPECT_NEAR(unit_cube_value(Order(2), default_config(Order(2))).value, std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(unit_cube_value(Order(3), default_config(Order(3))).value, kC3 / 3.0, 1e-10);
  EXPECT_NEAR(unit_cube_value(Order(4), default_config(Order(4))).value, kC4 / 4.0, 1e-8);
}

TEST(FullSpaceValue, MatchesConstant) {
  EXPECT_NEAR(full_space_value(Order(2), default_config(Order(2))).value, std::numbers::pi / 2, 1e-8);
  EXPECT_NEAR(full_space_value(Order(3), default_config(Order(3))).value, kC3, 1e-8);
  const EvalResult four = full_space_value(Order(4), default_config(Order(4)));
  EXPECT_TRUE(four.converged);
  EXPECT_NEAR(four.value, kC4, 1e-6);
}

TEST(FullSpaceValue, OrderFiveWithinQmcTolerance) {
  const QuadratureConfig cfg = QuadratureConfig::defaults_for(4, Method::qmc);
  const EvalResult r = full_space_value(Order(5), cfg);
  EXPECT_TRUE(r.converged);
  const double c5 = oracle::kArctanConstant[5];
  EXPECT_LE(std::abs(r.value - c5), std::max(cfg.abs_tol, cfg.rel_tol * c5) + r.error_estimate);
}

TEST(FullSpaceValue, DirectAndReducedRoutesAgree) {
  const QuadratureConfig cfg = default_config(Order(3));
  const EvalResult reduced = full_space_value(Order(3), cfg);
  const EvalResult direct = full_space_value_direct(Order(3), cfg);
  EXPECT_TRUE(direct.converged);
  EXPECT_NEAR(reduced.value, direct.value, reduced.error_estimate + direct.error_estimate);
}

TEST(EvalF, Examples) {
  EXPECT_NEAR(eval_F(Order(2), 1.0, default_config(Order(2))).value, std::numbers::pi / 2, 1e-11);
  EXPECT_NEAR(eval_F(Order(3), 1.0, default_config(Order(3))).value, kC3, 1e-9);
  const QuadratureConfig cfg = default_config(Order(3));
  const EvalResult a = eval_F(Order(3), 2.0, cfg);
  const EvalResult b = eval_F(Order(3), 0.5, cfg);
  EXPECT_NEAR(a.value + b.value, 2.0 * kC3, 1e-8);
  EXPECT_THROW(eval_F(Order(3), 0.0, cfg), std::domain_error);
}

TEST(EvalPhi4, Examples) {
  const QuadratureConfig cfg = default_config(Order(4));
  EXPECT_NEAR(eval_phi4(1.0, 1.0, cfg).value, kC4 / 2.0, 1e-7);
  const EvalResult a = eval_phi4(2.0, 3.0, cfg);
  const EvalResult b = eval_phi4(0.5, 1.0 / 3.0, cfg);
  EXPECT_NEAR(a.value + b.value, kC4, 10.0 * (a.error_estimate + b.error_estimate));
  EXPECT_THROW(eval_phi4(-1.0, 1.0, cfg), std::domain_error);
  EXPECT_THROW(eval_phi4(1.0, 0.0, cfg), std::domain_error);
}

TEST(Order4Relation, PrintedTriplesAreTheReflections) {
  std::mt19937_64 rng(404);
  const Order four(4);
  for (int i = 0; i < 50; ++i) {
    const double u = arctn::testing::log_uniform(rng, 0.1, 10.0);
    const double v = arctn::testing::log_uniform(rng, 0.1, 10.0);
    const auto printed = order4_printed_triples(u, v);
    const ArgVector base{u, v, u / v};
    EXPECT_TRUE(same_multiset(printed[0], base));
    for (std::size_t p = 1; p <= 3; ++p) {
      EXPECT_TRUE(same_multiset(printed[p], reflection_args(four, base, p))) << "p = " << p;
    }
    // Phi(1/u, 1/v) is made of the remaining two printed triples.
    const auto inverse = order4_printed_triples(1.0 / u, 1.0 / v);
    EXPECT_TRUE(same_multiset(inverse[0], printed[1]));
    EXPECT_TRUE(same_multiset(inverse[2], printed[3]));
  }
}

TEST(SameMultiset, ComparesSortedEntries) {
  EXPECT_TRUE(same_multiset({1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}));
  EXPECT_FALSE(same_multiset({1.0, 2.0, 3.0}, {3.0, 1.0, 2.5}));
  EXPECT_FALSE(same_multiset({1.0, 2.0}, {1.0, 2.0, 3.0}));
}

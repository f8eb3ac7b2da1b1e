#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "arctn/reduction.hpp"
#include "oracle_values.hpp"

using namespace arctn;

TEST(Registry, ListsTheFixedIntegrands) {
  std::vector<std::string> names;
  for (const auto& e : integrand_registry()) names.push_back(e.name);
  const std::vector<std::string> want = {"const_one",        "product_xy",      "exp_neg_sum_squares",
                                         "exp_neg_sum_cubes", "rational_arctan3", "polynomial_mixed"};
  EXPECT_EQ(names, want);
  EXPECT_THROW(find_integrand("sin_xy"), std::invalid_argument);
  EXPECT_EQ(find_integrand("rational_arctan3").arity, 2);
}

TEST(ExpPowerPartial, MatchesOracle) {
  for (const auto& [alpha, want] : oracle::kExpCubePartial) {
    EXPECT_NEAR(exp_power_partial(alpha, 3), want, 1e-14) << alpha;
  }
  for (const auto& [alpha, want] : oracle::kExpSquarePartial) {
    EXPECT_NEAR(exp_power_partial(alpha, 2), want, 1e-14) << alpha;
  }
  EXPECT_EQ(exp_power_partial(0.0, 3), 0.0);
}

TEST(ReduceF1, ConstantOne) {
  const ReductionReport r = reduce_check_f1("const_one", 1.0, QuadratureConfig::defaults_for(2));
  EXPECT_NEAR(r.lhs.value, 1.0, 1e-14);
  EXPECT_NEAR(r.rhs.value, 1.0, 1e-14);
  EXPECT_NEAR(r.residual, 0.0, 1e-14);
  EXPECT_TRUE(r.pass());
}

TEST(ReduceF1, ProductXY) {
  const ReductionReport r = reduce_check_f1("product_xy", 1.0, QuadratureConfig::defaults_for(2));
  EXPECT_NEAR(r.lhs.value, 0.25, 1e-14);
  EXPECT_NEAR(r.rhs.value, 0.25, 1e-14);
  EXPECT_TRUE(r.pass());
}

TEST(ReduceF1, GaussianSquareMatchesSeparableOracle) {
  const ReductionReport r = reduce_check_f1("exp_neg_sum_squares", 2.0, QuadratureConfig::defaults_for(2));
  const double side = oracle::kExpSquarePartial[2][1];
  EXPECT_NEAR(r.lhs.value, side * side, 1e-10);
  EXPECT_TRUE(r.pass());
}

TEST(ReduceF1, RationalTiesToUnitCubeValue) {
  const ReductionReport r = reduce_check_f1("rational_arctan3", 1.0, QuadratureConfig::defaults_for(2));
  EXPECT_NEAR(r.lhs.value, oracle::kArctanConstant[3] / 3.0, 1e-10);
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_NEAR(*r.exact, oracle::kArctanConstant[3] / 3.0, 1e-14);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(reduce_check_f1("rational_arctan3", 2.0, QuadratureConfig::defaults_for(2)).exact.has_value());
}

TEST(ReduceF2, ConstantOneInThreeVariables) {
  const ReductionReport r = reduce_check_f2("const_one", 3, 1.0, QuadratureConfig::defaults_for(3));
  EXPECT_NEAR(r.lhs.value, 1.0, 1e-14);
  EXPECT_NEAR(r.rhs.value, 1.0, 1e-14);
  EXPECT_TRUE(r.pass());
}

TEST(ReduceF2, CubicExponentialMatchesSeparableOracle) {
  const ReductionReport r = reduce_check_f2("exp_neg_sum_cubes", 3, 3.0, QuadratureConfig::defaults_for(3));
  const double side = oracle::kExpCubePartial[3][1];
  EXPECT_NEAR(r.lhs.value, side * side * side, 1e-8);
  EXPECT_TRUE(r.pass());
}

TEST(ReduceF2, TwoVariablesAgreesWithF1) {
  const QuadratureConfig cfg = QuadratureConfig::defaults_for(2);
  for (const auto& e : integrand_registry()) {
    if (!e.accepts_arity(2)) continue;
    for (double alpha : {0.5, 1.0, 2.0}) {
      const ReductionReport f1 = reduce_check_f1(e.name, alpha, cfg);
      const ReductionReport f2 = reduce_check_f2(e.name, 2, alpha, cfg);
      const double tol = f1.lhs.error_estimate + f1.rhs.error_estimate + f2.lhs.error_estimate + f2.rhs.error_estimate;
      EXPECT_NEAR(f1.lhs.value, f2.lhs.value, tol) << e.name << " alpha " << alpha;
      EXPECT_NEAR(f1.rhs.value, f2.rhs.value, tol) << e.name << " alpha " << alpha;
    }
  }
}

TEST(Reduce, ZeroAlphaIsExactlyZero) {
  for (const auto& e : integrand_registry()) {
    const ReductionReport r = reduce_check_f1(e.name, 0.0, QuadratureConfig::defaults_for(2));
    EXPECT_EQ(r.lhs.value, 0.0);
    EXPECT_EQ(r.rhs.value, 0.0);
    EXPECT_EQ(r.lhs.evals + r.rhs.evals, 0);
    EXPECT_TRUE(r.lhs.converged && r.rhs.converged);
    EXPECT_TRUE(r.pass());
  }
  EXPECT_EQ(reduce_check_f2("product_xy", 4, 0.0, QuadratureConfig::defaults_for(4)).rhs.value, 0.0);
}

TEST(Reduce, RejectsInvalidRequests) {
  const QuadratureConfig cfg = QuadratureConfig::defaults_for(2);
  EXPECT_THROW(reduce_check_f1("nope", 1.0, cfg), std::invalid_argument);
  EXPECT_THROW(reduce_check_f1("const_one", -0.1, cfg), std::domain_error);
  EXPECT_THROW(reduce_check_f1("const_one", 10.0, cfg), std::domain_error);
  EXPECT_THROW(reduce_check_f2("rational_arctan3", 3, 1.0, cfg), std::invalid_argument);
  EXPECT_THROW(reduce_check_f2("const_one", 5, 1.0, cfg), std::invalid_argument);
  EXPECT_THROW(reduce_check_f2("const_one", 1, 1.0, cfg), std::invalid_argument);
}

TEST(Reduce, EngineFailureIsAttributedToSide) {
  auto cfg = QuadratureConfig::defaults_for(4);
  cfg.max_evals = 1000;  // below one 4-D rule
  try {
    reduce_check_f2("const_one", 4, 1.0, cfg);
    FAIL() << "expected SideFailure";
  } catch (const SideFailure& e) {
    EXPECT_EQ(e.side(), "lhs");
  }
}

TEST(RadialReduction, RecoversHypercubeIntegralOfAsymmetricFunction) {
  const RegisteredIntegrand& poly = find_integrand("polynomial_mixed");
  const Integrand reduced = radial_reduction(poly.f, 3);
  const EvalResult r = integrate_box(reduced, Box({0.0, 0.0, 0.0}, {1.0, 1.0, 1.5}), QuadratureConfig::defaults_for(3));
  EXPECT_NEAR(r.value, *poly.exact(1.5, 3), 1e-10);
}

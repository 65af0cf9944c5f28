#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "axidiff/gauss_kronrod.hpp"
#include "axidiff/quadrature_oracle.hpp"

using namespace axidiff;

namespace {

double gaussian_closed_form(double c, double kt, double r) {
  const double den = 1.0 + 4.0 * c * kt;
  return std::exp(-c * r * r / den) / den;
}

InitialCondition constant_one() {
  return InitialCondition::custom([](double) { return 1.0; }, SupportHint::gaussian_dominated);
}

}  // namespace

TEST(GaussKronrod, PolynomialIsExactOnOnePanel) {
  const std::vector<double> pts{0.0, 2.0};
  const auto r = integrate_adaptive([](double x) { return std::pow(x, 12); }, pts, {1e-14, 1e-14, 10});
  EXPECT_NEAR(r.value, std::pow(2.0, 13) / 13.0, 1e-9);
  EXPECT_EQ(r.evaluations, 15);
}

TEST(GaussKronrod, EndpointSingularityRefines) {
  const std::vector<double> pts{0.0, 1.0};
  const auto r = integrate_adaptive([](double x) { return x > 0 ? std::log(x) : 0.0; }, pts, {1e-12, 1e-12, 2000});
  EXPECT_NEAR(r.value, -1.0, 1e-11);
  EXPECT_GT(r.evaluations, 15);
}

TEST(GaussKronrod, BudgetAndNonFiniteThrow) {
  const std::vector<double> pts{0.0, 1.0};
  EXPECT_THROW(integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-9)); }, pts, {1e-14, 1e-14, 20}),
               ConvergenceError);
  EXPECT_THROW(integrate_adaptive([](double) { return std::nan(""); }, pts, {1e-10, 1e-10, 100}),
               ConvergenceError);
  const std::vector<double> one{0.0};
  EXPECT_THROW(integrate_adaptive([](double) { return 1.0; }, one, {}), ParameterError);
}

TEST(Oracle, GaussianClosedForm) {
  const auto g = InitialCondition::gaussian(1.0);
  EXPECT_NEAR(solve_quadrature(g, {1.0, 0.0, 0.25}, 1e-12).value, 0.5, 1e-12);
  for (double kt : {0.01, 0.25, 3.0})
    for (double r : {0.0, 0.4, 2.0, 6.0})
      EXPECT_NEAR(solve_quadrature(g, {1.0, r, kt}, 1e-12).value, gaussian_closed_form(1.0, kt, r), 1e-12);
}

TEST(Oracle, DiskOnAxis) {
  const auto d = InitialCondition::uniform_disk(1.0);
  for (double t : {0.05, 0.25, 1.0})
    EXPECT_NEAR(solve_quadrature(d, {1.0, 0.0, t}, 1e-12).value, 1.0 - std::exp(-1.0 / (4.0 * t)), 1e-12);
}

TEST(Oracle, ConstantIsPreserved) {
  for (double r : {0.0, 0.7, 5.0}) EXPECT_NEAR(solve_quadrature(constant_one(), {2.0, r, 0.3}, 1e-12).value, 1.0, 1e-12);
}

TEST(Oracle, ZeroProfile) {
  const auto z = InitialCondition::custom([](double) { return 0.0; }, SupportHint::gaussian_dominated);
  EXPECT_EQ(solve_quadrature(z, {1.0, 0.5, 0.5}, 1e-10).value, 0.0);
}

TEST(Oracle, HugeKernelArgumentDoesNotOverflow) {
  // y r / 2κt reaches ~ 10^5; the raw I0 factor would overflow
  const auto g = InitialCondition::gaussian(1e-4);
  const double kt = 1e-3;
  const double r = 8.0;
  EXPECT_NEAR(solve_quadrature(g, {1.0, r, kt}, 1e-12).value, gaussian_closed_form(1e-4, kt, r), 1e-12);
}

TEST(Oracle, KappaTScaling) {
  for (const auto& g : {InitialCondition::gaussian(1.0), InitialCondition::uniform_disk(1.0),
                        InitialCondition::bessel_j0(1.0), InitialCondition::bessel_j0_squared(1.0),
                        InitialCondition::product_ik(1.0, 0.3)}) {
    const double a = solve_quadrature(g, {0.25, 0.8, 2.0}, 1e-13).value;
    const double b = solve_quadrature(g, {1.0, 0.8, 0.5}, 1e-13).value;
    EXPECT_NEAR(a, b, 1e-12 * std::abs(b)) << g.name();
  }
}

TEST(Oracle, InitialConditionRecovery) {
  for (const auto& g : {InitialCondition::gaussian(1.0), InitialCondition::bessel_j0(1.0),
                        InitialCondition::bessel_j0_squared(1.0), InitialCondition::product_ik(1.0, 0.5)})
    for (double r : {0.2, 0.7, 1.5}) EXPECT_NEAR(solve_quadrature(g, {1.0, r, 1e-6}, 1e-10).value, g(r), 1e-3);
  // half-order closed form of I_v K_v
  EXPECT_NEAR(solve_quadrature(InitialCondition::product_ik(1.0, 0.5), {1.0, 0.4, 1e-6}, 1e-10).value,
              (1.0 - std::exp(-0.8)) / 0.8, 1e-3);
}

TEST(Oracle, RadialSymmetryAtAxis) {
  for (const auto& g : {InitialCondition::gaussian(1.0), InitialCondition::uniform_disk(1.0),
                        InitialCondition::bessel_j0(1.0), InitialCondition::bessel_j0_squared(1.0),
                        InitialCondition::product_ik(1.0, 0.3)})
    for (double kt : {0.1, 1.0})
      EXPECT_NEAR(solve_quadrature(g, {1.0, 1e-4, kt}, 1e-13).value, solve_quadrature(g, {1.0, 0.0, kt}, 1e-13).value,
                  1e-7);
}

TEST(Oracle, TruncationAndToleranceStability) {
  const auto g = InitialCondition::product_ik(1.0, 0.3);
  const PhysicalSetup s{1.0, 0.7, 0.5};
  const auto base = solve_quadrature(g, s, 1e-10);
  const auto wide = solve_quadrature(g, s, 1e-10, {2.0, 20000});
  const auto tight = solve_quadrature(g, s, 5e-11);
  EXPECT_LE(std::abs(wide.value - base.value), std::max(base.abs_error_estimate, 1e-15));
  EXPECT_LE(std::abs(tight.value - base.value), std::max(base.abs_error_estimate, 1e-15));
}

TEST(Oracle, ErrorEstimateWithinRequest) {
  const auto g = InitialCondition::bessel_j0_squared(1.0);
  const auto q = solve_quadrature(g, {1.0, 1.0, 0.5}, 1e-10);
  EXPECT_LE(q.abs_error_estimate, 1e-10 * std::max(1.0, std::abs(q.value)));
  EXPECT_GT(q.evaluations, 0);
}

TEST(Oracle, LogQuadratureFrozenValues) {
  EXPECT_NEAR(solve_quadrature_log(InitialCondition::gaussian(1.0), {1.0, 0.7, 0.5}, 1e-12).value,
              -0.127771552557725017, 1e-11);
  EXPECT_NEAR(solve_quadrature_log(InitialCondition::uniform_disk(1.0), {1.0, 0.5, 0.25}, 1e-12).value,
              -0.32660773307489763, 1e-11);
  // log-weighted input dispatches to the same routine
  const auto lg = InitialCondition::log_weighted(InitialCondition::gaussian(1.0));
  EXPECT_NEAR(solve_quadrature(lg, {1.0, 0.7, 0.5}, 1e-12).value, -0.127771552557725017, 1e-11);
  EXPECT_THROW(solve_quadrature_log(lg, {1.0, 0.7, 0.5}, 1e-12), ParameterError);
}

TEST(Oracle, ParameterErrors) {
  const auto g = InitialCondition::gaussian(1.0);
  EXPECT_THROW(solve_quadrature(g, {0.0, 0.5, 1.0}, 1e-10), ParameterError);
  EXPECT_THROW(solve_quadrature(g, {1.0, -0.5, 1.0}, 1e-10), ParameterError);
  EXPECT_THROW(solve_quadrature(g, {1.0, 0.5, 0.0}, 1e-10), ParameterError);
  EXPECT_THROW(solve_quadrature(g, {1.0, 0.5, 1.0}, 1e-14), ParameterError);
  EXPECT_THROW(solve_quadrature(g, {1.0, 0.5, 1.0}, 1e-3), ParameterError);
}

TEST(Oracle, GrowthProbe) {
  const auto bad = InitialCondition::custom([](double y) { return std::exp(y * y); }, SupportHint::gaussian_dominated);
  EXPECT_THROW(solve_quadrature(bad, {1.0, 0.5, 0.5}, 1e-10), GrowthError);
  const auto nan = InitialCondition::custom([](double) { return std::nan(""); }, SupportHint::gaussian_dominated);
  EXPECT_THROW(solve_quadrature(nan, {1.0, 0.5, 0.5}, 1e-10), GrowthError);
}

TEST(Oracle, FiniteSupportHint) {
  const auto c = InitialCondition::custom([](double) { return 1.0; }, SupportHint::finite, 1.0);
  const auto d = InitialCondition::uniform_disk(1.0);
  EXPECT_NEAR(solve_quadrature(c, {1.0, 0.6, 0.3}, 1e-12).value, solve_quadrature(d, {1.0, 0.6, 0.3}, 1e-12).value,
              1e-12);
  EXPECT_THROW(InitialCondition::custom([](double) { return 1.0; }, SupportHint::finite), ParameterError);
}

TEST(InitialConditionTest, FactoriesValidate) {
  EXPECT_THROW(InitialCondition::gaussian(0.0), ParameterError);
  EXPECT_THROW(InitialCondition::uniform_disk(-1.0), ParameterError);
  EXPECT_THROW(InitialCondition::bessel_j0(0.0), ParameterError);
  EXPECT_THROW(InitialCondition::product_ik(1.0, 1.0), ParameterError);
  EXPECT_THROW(InitialCondition::product_ik(1.0, 0.0), ParameterError);
  const auto lg = InitialCondition::log_weighted(InitialCondition::gaussian(1.0));
  EXPECT_THROW(InitialCondition::log_weighted(lg), ParameterError);
  EXPECT_EQ(lg.name(), "log-gaussian");
  EXPECT_NEAR(lg(2.0), std::exp(-4.0) * std::log(2.0), 1e-16);
  EXPECT_EQ(InitialCondition::uniform_disk(1.0)(1.0), 0.5);
}

#include <gtest/gtest.h>

#include "nrange/sampling.hpp"
#include "nrange/spectral_calc.hpp"
#include "test_support.hpp"

using namespace nrange;
using namespace nrange::test;

namespace {

ComplexMatrix sample(EnsembleClass cls, int n, std::uint64_t seed, std::int64_t index, int slot = 0) {
  return generate_slot(GeneratorConfig{cls, n, seed, index + 1}, index, slot);
}

const ScalarFunction square = ScalarFunction::power(2.0);

/// Closed form of int_0^1 ((1-t)a + tb)^r dt for scalars a, b >= 0, r != -1.
double scalar_power_mean(double a, double b, double r) {
  if (std::abs(a - b) < 1e-14) return std::pow(a, r);
  return (std::pow(b, r + 1) - std::pow(a, r + 1)) / ((r + 1) * (b - a));
}

} // namespace

TEST(ScalarFunction, PowerFlags) {
  for (double r : {1.0, 1.5, 2.0}) {
    const auto f = ScalarFunction::power(r);
    EXPECT_EQ(f.domain(), FunctionDomain::nonnegative);
    EXPECT_TRUE(f.flags().nonnegative && f.flags().increasing && f.flags().operator_convex) << r;
  }
  for (double r : {-1.0, -0.5}) {
    const auto f = ScalarFunction::power(r);
    EXPECT_EQ(f.domain(), FunctionDomain::positive);
    EXPECT_TRUE(f.flags().operator_convex);
    EXPECT_FALSE(f.flags().increasing);
  }
  EXPECT_FALSE(ScalarFunction::power(3.0).flags().operator_convex);
  EXPECT_FALSE(ScalarFunction::power(0.5).flags().operator_convex);
}

TEST(ScalarFunction, ParseAndName) {
  EXPECT_EQ(ScalarFunction::parse("t").name(), "t");
  EXPECT_EQ(ScalarFunction::parse("t^1.5").name(), "t^1.5");
  EXPECT_EQ(ScalarFunction::parse("t^2").name(), "t^2");
  EXPECT_TRUE(ScalarFunction::parse("t^2").is_square());
  EXPECT_TRUE(ScalarFunction::polynomial({0.0, 0.0, 1.0}, FunctionDomain::all_reals, {}).is_square());
  EXPECT_FALSE(ScalarFunction::parse("t^1.5").is_square());
  EXPECT_THROW(ScalarFunction::parse("sin(t)"), InvalidInput);
  EXPECT_THROW(ScalarFunction::parse("t^"), InvalidInput);
  EXPECT_THROW(ScalarFunction::parse("t^2x"), InvalidInput);
  EXPECT_DOUBLE_EQ(ScalarFunction::parse("t^1.5")(4.0), 8.0);
  EXPECT_DOUBLE_EQ(ScalarFunction::polynomial({1.0, -2.0, 3.0}, FunctionDomain::all_reals, {})(2.0), 9.0);
}

TEST(ApplyScalarFunction, Examples) {
  EXPECT_LE((apply_scalar_function(square, diag({1.0, 2.0})) - diag({1.0, 4.0})).norm(), 1e-14);
  EXPECT_LE((apply_scalar_function(ScalarFunction::power(-1.0), diag({2.0, 4.0})) - diag({0.5, 0.25})).norm(),
            1e-15);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix P = sample(EnsembleClass::psd, 4, 3, k);
    const ComplexMatrix R = apply_scalar_function(ScalarFunction::power(0.5), P);
    EXPECT_LE((R * R - P).norm(), 1e-10 * std::max(1.0, P.norm()));
    const ComplexMatrix ref = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(P).operatorSqrt();
    EXPECT_LE((R - ref).norm(), 1e-10 * std::max(1.0, R.norm()));
  }
}

TEST(ApplyScalarFunction, IdentityPower) {
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix H = sample(EnsembleClass::psd, 1 + k % 6, 5, k);
    EXPECT_LE((apply_scalar_function(ScalarFunction::power(1.0), H) - H).norm(), 1e-12 * std::max(1.0, H.norm()));
  }
}

TEST(ApplyScalarFunction, Domains) {
  EXPECT_THROW(apply_scalar_function(ScalarFunction::power(1.5), diag({1.0, -1.0})), DomainViolation);
  EXPECT_THROW(apply_scalar_function(ScalarFunction::power(-1.0), diag({1.0, 0.0})), DomainViolation);
  EXPECT_THROW(apply_scalar_function(square, nilpotent2()), NotHermitian);
  // Roundoff negativity is clamped for nonnegative domains.
  const ComplexMatrix R = apply_scalar_function(ScalarFunction::power(0.5), diag({4.0, -1e-13}));
  EXPECT_NEAR(R(0, 0).real(), 2.0, 1e-15);
  EXPECT_EQ(R(1, 1).real(), 0.0);
  // Polynomials on all reals accept any spectrum.
  const auto cube = ScalarFunction::polynomial({0.0, 0.0, 0.0, 1.0}, FunctionDomain::all_reals, {});
  EXPECT_LE((apply_scalar_function(cube, diag({-2.0, 1.0})) - diag({-8.0, 1.0})).norm(), 1e-13);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int order : {2, 3, 8, 32}) {
    const QuadratureRule rule = gauss_legendre_unit(order);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
    // Exact up to degree 2*order - 1: compare with 1/(k+1).
    for (int k = 0; k <= 2 * order - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      EXPECT_NEAR(s, 1.0 / (k + 1), 1e-14) << "order " << order << " degree " << k;
    }
  }
  EXPECT_THROW(QuadratureConfig{1}.validate(), InvalidInput);
}

TEST(LoewnerOrder, Examples) {
  EXPECT_TRUE(loewner_leq(ComplexMatrix::Zero(2, 2), identity(2), 1e-12));
  EXPECT_FALSE(loewner_leq(identity(2), ComplexMatrix::Zero(2, 2), 1e-12));
  const ComplexMatrix H = sample(EnsembleClass::hermitian, 4, 7, 0);
  EXPECT_TRUE(loewner_leq(H, H, 0.0));
  EXPECT_THROW(loewner_leq(nilpotent2(), identity(2), 1e-12), NotHermitian);
}

TEST(LoewnerOrder, MarginMatchesOracle) {
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix X = sample(EnsembleClass::hermitian, 5, 9, k, 0);
    const ComplexMatrix Y = sample(EnsembleClass::hermitian, 5, 9, k, 1);
    const double scale = std::max({1.0, oracle_hermitian_norm(X), oracle_hermitian_norm(Y)});
    EXPECT_NEAR(loewner_margin(X, Y), oracle_lambda_min(Y - X) / scale, 1e-12);
  }
}

TEST(HHIntegralMean, Examples) {
  EXPECT_LE((hh_integral_mean(square, ComplexMatrix::Zero(2, 2), identity(2)) - identity(2) / 3.0).norm(), 1e-15);
  for (const auto& f : {square, ScalarFunction::power(1.5), ScalarFunction::power(1.0)}) {
    const ComplexMatrix H = sample(EnsembleClass::psd, 3, 11, 0);
    EXPECT_LE((hh_integral_mean(f, H, H) - apply_scalar_function(f, H)).norm(), 1e-11 * std::max(1.0, H.norm()));
  }
  const ComplexMatrix X = diag({0.5, 2.5});
  const ComplexMatrix expected = diag({21.0 / 4, 61.0 / 4}) / 3.0;
  EXPECT_LE((hh_integral_mean(square, X, 2.0 * identity(2)) - expected).norm(), 1e-14);
  EXPECT_LE((hh_integral_mean(square, 2.0 * identity(2), X) - expected).norm(), 1e-14);
}

TEST(HHIntegralMean, ScalarClosedFormOracle) {
  // Diagonal X, Y commute; each diagonal entry integrates independently.
  for (double r : {1.0, 1.5, 2.0, -0.5}) {
    const auto f = ScalarFunction::power(r);
    const ComplexMatrix X = diag({0.3, 2.0, 5.0});
    const ComplexMatrix Y = diag({1.7, 2.0, 0.9});
    const ComplexMatrix M = hh_integral_mean(f, X, Y, QuadratureConfig{32});
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(M(i, i).real(), scalar_power_mean(X(i, i).real(), Y(i, i).real(), r), 1e-10) << r;
    }
  }
}

TEST(HHIntegralMean, DomainViolation) {
  EXPECT_THROW(hh_integral_mean(ScalarFunction::power(1.5), diag({1.0, -1.0}), identity(2)), DomainViolation);
  EXPECT_THROW(hh_integral_mean(ScalarFunction::power(-1.0), diag({1.0, 0.0}), diag({0.0, 1.0})), DomainViolation);
}

TEST(HHIntegralMean, Symmetry) {
  for (const auto& f : {square, ScalarFunction::power(1.5)}) {
    for (int k = 0; k < 10; ++k) {
      const ComplexMatrix X = sample(EnsembleClass::psd, 4, 13, k, 0);
      const ComplexMatrix Y = sample(EnsembleClass::psd, 4, 13, k, 1);
      const ComplexMatrix a = hh_integral_mean(f, X, Y);
      const ComplexMatrix b = hh_integral_mean(f, Y, X);
      EXPECT_LE((a - b).norm(), 1e-10 * std::max(1.0, a.norm()));
    }
  }
}

TEST(HHIntegralMean, QuadratureMatchesClosedForm) {
  for (int order : {2, 3, 8, 32}) {
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix X = sample(EnsembleClass::hermitian, 1 + k % 6, 17, k, 0);
      const ComplexMatrix Y = sample(EnsembleClass::hermitian, 1 + k % 6, 17, k, 1);
      const auto sq = ScalarFunction::polynomial({0.0, 0.0, 1.0}, FunctionDomain::all_reals, {true, false, true});
      const ComplexMatrix quad = hh_integral_mean(sq, X, Y, QuadratureConfig{order});
      const ComplexMatrix closed = squared_integral_mean_closed_form(X, Y);
      const double scale = std::max({1.0, std::pow(X.norm(), 2), std::pow(Y.norm(), 2)});
      EXPECT_LE((quad - closed).norm(), 1e-10 * scale) << "order " << order;
    }
  }
}

TEST(SquaredClosedForm, Examples) {
  EXPECT_LE((squared_integral_mean_closed_form(ComplexMatrix::Zero(2, 2), identity(2)) - identity(2) / 3.0).norm(),
            1e-15);
  const ComplexMatrix H = sample(EnsembleClass::hermitian, 3, 19, 0);
  EXPECT_LE((squared_integral_mean_closed_form(H, H) - H * H).norm(), 1e-13 * std::max(1.0, (H * H).norm()));
  const ComplexMatrix X = diag({0.5, 2.5});
  const ComplexMatrix shifted = (X * X + 4.0 * identity(2) + 2.0 * X) / 3.0;
  const ComplexMatrix got = squared_integral_mean_closed_form(X, 2.0 * identity(2));
  EXPECT_LE((got - shifted).norm(), 1e-14);
  EXPECT_NEAR(got(0, 0).real(), 21.0 / 12, 1e-15);
  EXPECT_NEAR(got(1, 1).real(), 61.0 / 12, 1e-14);
  EXPECT_NEAR(std::sqrt(got(1, 1).real()), std::sqrt(61.0 / 12), 1e-14);
  EXPECT_THROW(squared_integral_mean_closed_form(nilpotent2(), identity(2)), NotHermitian);
}

TEST(HermiteHadamard, SandwichOnPsdPairs) {
  for (const auto& f : {ScalarFunction::power(1.0), ScalarFunction::power(1.5), square}) {
    for (int k = 0; k < 30; ++k) {
      const int n = 1 + k % 6;
      const ComplexMatrix X = sample(EnsembleClass::psd, n, 23, k, 0);
      const ComplexMatrix Y = sample(EnsembleClass::psd, n, 23, k, 1);
      const ComplexMatrix mean = hh_integral_mean(f, X, Y);
      const ComplexMatrix mid = apply_scalar_function(f, ComplexMatrix((X + Y) * 0.5));
      const ComplexMatrix avg = (apply_scalar_function(f, X) + apply_scalar_function(f, Y)) * 0.5;
      EXPECT_TRUE(loewner_leq(mid, mean, 1e-9)) << f.name();
      EXPECT_TRUE(loewner_leq(mean, avg, 1e-9)) << f.name();
      // Norm form.
      EXPECT_LE(oracle_hermitian_norm(mid), oracle_hermitian_norm(mean) + 1e-9 * std::max(1.0, avg.norm()));
      EXPECT_LE(oracle_hermitian_norm(mean), oracle_hermitian_norm(avg) + 1e-9 * std::max(1.0, avg.norm()));
    }
  }
}

TEST(OperatorConvexity, SquareAndIdentityPass) {
  const ConvexityReport sq = check_operator_convexity(square, 3, 200, 29, 1e-9);
  EXPECT_EQ(sq.violations, 0);
  EXPECT_EQ(sq.checks, 200 * 9);
  EXPECT_GE(sq.worst_slack, -1e-9);
  const ConvexityReport id = check_operator_convexity(ScalarFunction::power(1.0), 3, 100, 31, 1e-9);
  EXPECT_EQ(id.violations, 0);
  EXPECT_NEAR(id.worst_slack, 0.0, 1e-12);
  EXPECT_EQ(check_operator_convexity(ScalarFunction::power(-1.0), 3, 100, 37, 1e-9).violations, 0);
}

TEST(OperatorConvexity, CubeIsNotOperatorConvex) {
  const auto cube = ScalarFunction::power(3.0);
  const ConvexityReport r = check_operator_convexity(cube, 2, 1000, 1, 1e-9);
  EXPECT_GE(r.violations, 1);
  EXPECT_LT(r.worst_slack, -1e-9);
}

TEST(OperatorConvexity, PinnedCubeCounterexample) {
  // X = diag(2,0), Y = [[3,2],[2,3]], t = 1/2: (X^3+Y^3)/2 - ((X+Y)/2)^3 equals
  // [[107/8, 71/4], [71/4, 181/8]], whose determinant is -797/64.
  const ComplexMatrix X = diag({2.0, 0.0});
  const ComplexMatrix Y = mat({{3.0, 2.0}, {2.0, 3.0}});
  const auto cube = ScalarFunction::power(3.0);
  const ComplexMatrix residual =
      (apply_scalar_function(cube, X) + apply_scalar_function(cube, Y)) * 0.5 -
      apply_scalar_function(cube, ComplexMatrix((X + Y) * 0.5));
  EXPECT_LE((residual - mat({{107.0 / 8, 71.0 / 4}, {71.0 / 4, 181.0 / 8}})).norm(), 1e-12);
  const double lambda_min = (36.0 - std::sqrt(36.0 * 36.0 + 4.0 * 797.0 / 64)) / 2;
  EXPECT_NEAR(oracle_lambda_min(residual), lambda_min, 1e-12);
  EXPECT_LT(convexity_margin(cube, X, Y, 0.5), -1e-3);
  // The same pair is fine for t^2.
  EXPECT_GE(convexity_margin(square, X, Y, 0.5), -1e-12);
}

#include "polyharm/eigenmap.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace polyharm;

namespace {

constexpr double kPi = std::numbers::pi;

double delta_from_sin2(double t) { return std::asin(std::sqrt(t)); }

}  // namespace

TEST(Epsilon, Examples) {
  EXPECT_NEAR(epsilon_r(kPi / 4, 2), 0.25, 1e-15);
  EXPECT_NEAR(epsilon_r(delta_from_sin2(1.0 / 3), 3), 4.0 / 27, 1e-15);
  EXPECT_LT(epsilon_r(1e-8, 2), 1e-15);
  EXPECT_THROW(epsilon_r(0.0, 2), std::domain_error);
  EXPECT_THROW(epsilon_r(kPi / 2, 2), std::domain_error);
  EXPECT_THROW(epsilon_r(0.5, 1), std::domain_error);
}

TEST(Epsilon, DerivativesMatchFiniteDifferences) {
  for (int r = 2; r <= 6; ++r)
    for (int i = 1; i <= 100; ++i) {
      const long double d = (kPi / 2) * i / 101.0L;
      const long double h1 = 1e-6L, h2 = 2e-5L;
      const long double fd1 = (epsilon_r(d + h1, r) - epsilon_r(d - h1, r)) / (2 * h1);
      const long double fd2 = (epsilon_r(d + h2, r) - 2 * epsilon_r(d, r) + epsilon_r(d - h2, r)) / (h2 * h2);
      const auto exact = epsilon_r_derivatives(d, r);
      EXPECT_NEAR(static_cast<double>(exact.first), static_cast<double>(fd1), 1e-8) << r << " " << i;
      EXPECT_NEAR(static_cast<double>(exact.second), static_cast<double>(fd2), 1e-8) << r << " " << i;
    }
}

TEST(Epsilon, CriticalPointIsUnstable) {
  for (int r = 2; r <= 6; ++r) {
    const double d = critical_delta(r);
    EXPECT_NEAR(std::sin(d) * std::sin(d), 1.0 / r, 1e-15);
    const auto der = epsilon_r_derivatives(d, r);
    EXPECT_NEAR(der.first, 0.0, 1e-15);
    EXPECT_LT(der.second, 0.0);
  }
  EXPECT_GT(epsilon_r_derivatives(0.05, 2).first, 0.0);
  EXPECT_LT(epsilon_r_derivatives(kPi / 4, 2).second, 0.0);
}

TEST(Epsilon, CriticalAngles) {
  EXPECT_NEAR(critical_delta(2), kPi / 4, 1e-15);
  EXPECT_NEAR(critical_delta(4), kPi / 6, 1e-15);
  EXPECT_THROW(critical_delta(1), std::domain_error);
}

TEST(Epsilon, UniqueZeroOfFirstDerivative) {
  for (int r = 2; r <= 6; ++r) {
    int changes = 0;
    double where = 0;
    double prev = epsilon_r_derivatives(kPi / 2 / 10001, r).first;
    for (int i = 2; i <= 10000; ++i) {
      const double d = kPi / 2 * i / 10001;
      const double cur = epsilon_r_derivatives(d, r).first;
      if ((prev > 0) != (cur > 0)) {
        ++changes;
        where = d;
      }
      prev = cur;
    }
    EXPECT_EQ(changes, 1) << r;
    EXPECT_NEAR(where, critical_delta(r), kPi / 2 / 10001 * 1.01);
  }
}

TEST(Epsilon, ArgmaxIsCriticalAngle) {
  for (int r = 2; r <= 6; ++r) {
    const int n = 100000;
    const double step = kPi / 2 / (n + 1);
    double best = 0, arg = 0;
    for (int i = 1; i <= n; ++i) {
      const double v = epsilon_r(i * step, r);
      if (v > best) {
        best = v;
        arg = i * step;
      }
    }
    EXPECT_NEAR(arg, critical_delta(r), step) << r;
  }
}

TEST(Epsilon, CriticalValueDecreasesInOrder) {
  for (int r = 2; r <= 10; ++r) {
    Rational expected = Rational(1, r);
    for (int k = 0; k < r - 1; ++k) expected *= Rational(r - 1, r);
    EXPECT_EQ(critical_epsilon(r), expected);
    EXPECT_NEAR(critical_epsilon(r).get_d(), epsilon_r(critical_delta(r), r), 1e-14);
    if (r > 2) {
      EXPECT_LT(critical_epsilon(r), critical_epsilon(r - 1));
    }
  }
  EXPECT_EQ(critical_epsilon(2), Rational(1, 4));
}

TEST(Energy, SphereVolumes) {
  EXPECT_NEAR(sphere_volume(1), 2 * kPi, 1e-12);
  EXPECT_NEAR(sphere_volume(2), 4 * kPi, 1e-12);
  EXPECT_NEAR(sphere_volume(3), 2 * kPi * kPi, 1e-12);
  EXPECT_NEAR(sphere_volume(4), 8 * kPi * kPi / 3, 1e-12);
}

TEST(Energy, Examples) {
  EXPECT_NEAR(r_energy(2, 2, kPi / 4, 2), 4 * kPi, 1e-12);
  EXPECT_THROW(r_energy(0, 2, kPi / 4, 2), std::domain_error);
  // the critical angle maximizes E_2 on a grid
  const double crit = r_energy(2, 2, critical_delta(2), 2);
  for (int i = 1; i < 1000; ++i) EXPECT_LE(r_energy(2, 2, kPi / 2 * i / 1000, 2), crit + 1e-12);
}

TEST(IteratedTension, Examples) {
  EXPECT_EQ(iterated_tension_factor(2, kPi / 4, 0), 1.0);
  EXPECT_NEAR(iterated_tension_factor(2, kPi / 4, 1), -1.0, 1e-15);
  EXPECT_NEAR(iterated_tension_factor(2, kPi / 4, 2), 1.0, 1e-15);
  EXPECT_EQ(iterated_tension_factor_exact(Rational(2), Rational(1, 2), 1), Rational(-1));
  EXPECT_EQ(iterated_tension_factor_exact(Rational(2), Rational(1, 2), 2), Rational(1));
  EXPECT_THROW(iterated_tension_factor(2, 0.3, -1), std::invalid_argument);
}

TEST(IteratedTension, Recursion) {
  const std::vector<Rational> lambdas = {Rational(2), Rational(6), Rational(12), Rational(7, 3)};
  const std::vector<Rational> ts = {Rational(1, 2), Rational(1, 3), Rational(2, 7)};
  for (const auto& l : lambdas)
    for (const auto& t : ts)
      for (int k = 0; k < 8; ++k)
        EXPECT_EQ(iterated_tension_factor_exact(l, t, k + 1),
                  Rational(-l * (1 - t) * iterated_tension_factor_exact(l, t, k)));
}

TEST(Eigenmap, LambdaFormula) {
  EXPECT_EQ(eigenmap_lambda(1, 2), 2);
  EXPECT_EQ(eigenmap_lambda(2, 2), 6);
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(eigenmap_lambda(1, m), m);
  EXPECT_THROW(eigenmap_lambda(0, 2), std::invalid_argument);
}

TEST(Eigenmap, IdentityMaps) {
  for (int m : {2, 4}) {
    const EigenmapSpec id = identity_eigenmap(m);
    EXPECT_EQ(id.lambda, m);
    const auto rep = verify_eigenmap_numeric(id, SamplePlan{m + 1, 50, 42, 0.3});
    EXPECT_TRUE(rep.pass) << m << " " << rep.max_error;
  }
}

TEST(Eigenmap, ScaledIdentityFails) {
  EigenmapSpec s = identity_eigenmap(2);
  for (auto& c : s.components) c = c.scaled(Rational(2));
  EXPECT_FALSE(verify_eigenmap_numeric(s, SamplePlan{3, 20, 42, 0.3}).pass);
}

TEST(Eigenmap, QuadraticCircleMap) {
  // (x^2 - y^2, 2xy): S^1 -> S^1, degree 2, lambda = 2 * (2 + 1 - 1) = 4
  const RadialScalar x = RadialScalar::coordinate(2, 0), y = RadialScalar::coordinate(2, 1);
  EigenmapSpec s;
  s.m = 1;
  s.lambda = static_cast<double>(eigenmap_lambda(2, 1));
  s.components = {x * x - y * y, (x * y).scaled(Rational(2))};
  EXPECT_EQ(s.lambda, 4.0);
  EXPECT_TRUE(verify_eigenmap_numeric(s, SamplePlan{2, 50, 42, 0.3}).pass);
  s.lambda = 3;
  EXPECT_FALSE(verify_eigenmap_numeric(s, SamplePlan{2, 20, 42, 0.3}).pass);
}

TEST(Eigenmap, RejectsMalformedSpecs) {
  EigenmapSpec empty;
  EXPECT_THROW(verify_eigenmap_numeric(empty, SamplePlan{3, 5, 42, 0.3}), std::invalid_argument);
  EXPECT_THROW(verify_eigenmap_numeric(identity_eigenmap(2), SamplePlan{2, 5, 42, 0.3}), std::invalid_argument);
}

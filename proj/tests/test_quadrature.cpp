#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "vixbns/quadrature.hpp"

using namespace vixbns;

TEST(GaussKronrod, ExactForPolynomialsUpToDegree31) {
  // One GK21 panel integrates degree <= 3*10+1 exactly.
  for (int deg = 0; deg <= 31; ++deg) {
    auto f = [deg](double x) { return std::pow(x, deg); };
    const auto r = quad::integrate<double>(f, -1.0, 2.0, {1e-300, 0.0}, 21);
    const double want = (std::pow(2.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
    EXPECT_NEAR(r.value, want, 1e-13 * std::max(1.0, std::abs(want))) << "degree " << deg;
  }
}

TEST(GaussKronrod, AdaptiveOnPeakedIntegrand) {
  auto f = [](double x) { return 1.0 / (1e-4 + x * x); };
  const auto r = quad::integrate<double>(f, -1.0, 1.0, {1e-9, 0.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0 * std::atan(1.0 / 1e-2) / 1e-2, 1e-10);
}

TEST(GaussKronrod, ComplexIntegrand) {
  auto f = [](double x) { return std::exp(std::complex<double>(0.0, 7.0) * x); };
  const auto r = quad::integrate<std::complex<double>>(f, 0.0, 1.0, {1e-14, 0.0});
  const std::complex<double> want = (std::exp(std::complex<double>(0.0, 7.0)) - 1.0) /
                                    std::complex<double>(0.0, 7.0);
  EXPECT_LT(std::abs(r.value - want), 1e-14);
}

TEST(GaussKronrod, BreakpointsAndEndpointSingularity) {
  auto f = [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; };
  const auto br = quad::geometric_breaks(1e-12, 4.0);
  const auto r = quad::integrate<double>(f, std::span<const double>(br), {1e-10, 0.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 4.0, 1e-9);
}

TEST(GaussKronrod, RuleReproducesValue) {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  std::vector<quad::Node> rule;
  const double br[] = {0.0, 1.0, 10.0};
  const auto r = quad::integrate<double>(f, std::span<const double>(br), {1e-12, 0.0}, 1 << 20, &rule);
  double acc = 0.0;
  for (const auto& n : rule) acc += n.w * f(n.x);
  EXPECT_NEAR(acc, r.value, 1e-15);
}

TEST(GaussKronrod, ReportsNonConvergence) {
  auto f = [](double x) { return std::sin(1.0 / x); };
  const auto r = quad::integrate<double>(f, 1e-9, 1.0, {1e-15, 0.0}, 2000);
  EXPECT_FALSE(r.converged);
}

TEST(GeometricBreaks, Shape) {
  const auto br = quad::geometric_breaks(0.5, 5.0);
  EXPECT_EQ(br, (std::vector<double>{0.0, 0.5, 1.0, 2.0, 4.0, 5.0}));
}

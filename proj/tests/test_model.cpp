#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "vixbns/errors.hpp"

using namespace vixbns;
using namespace vixbns::test;

TEST(ModelParams, RejectsInvalidInputs) {
  auto bad = [](auto mutate) {
    ModelInputs in = study_inputs();
    mutate(in);
    return in;
  };
  EXPECT_THROW(ModelParams(bad([](ModelInputs& i) { i.lambda = 0.0; })), DomainError);
  EXPECT_THROW(ModelParams(bad([](ModelInputs& i) { i.a = -1.0; })), DomainError);
  EXPECT_THROW(ModelParams(bad([](ModelInputs& i) { i.b = -11.6641; })), DomainError);
  EXPECT_THROW(ModelParams(bad([](ModelInputs& i) { i.rho = 0.1; })), DomainError);
  EXPECT_THROW(ModelParams(bad([](ModelInputs& i) { i.r = -0.01; })), DomainError);
  EXPECT_THROW(ModelParams(bad([](ModelInputs& i) { i.tau = 0.0; })), DomainError);
  EXPECT_NO_THROW(ModelParams(bad([](ModelInputs& i) { i.rho = 0.0; })));
}

TEST(MarketState, Validate) {
  EXPECT_NO_THROW(study_state().validate());
  EXPECT_THROW((MarketState{0.5, 0.0, 0.0145}.validate()), DomainError);
  EXPECT_THROW((MarketState{0.5, 100.0, 0.0}.validate()), DomainError);
  EXPECT_THROW((MarketState{-0.1, 100.0, 0.01}.validate()), DomainError);
}

TEST(Kappa, ZeroAndConjugateSymmetry) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelParams p = study_params(v);
    EXPECT_EQ(kappa(p, cplx(0.0, 0.0)), cplx(0.0, 0.0));
    for (cplx u : {cplx(1.0, 2.0), cplx(-3.0, -7.5), cplx(5.0, 40.0)}) {
      const cplx a = kappa(p, std::conj(u));
      const cplx b = std::conj(kappa(p, u));
      EXPECT_NEAR(a.real(), b.real(), 1e-14 * std::abs(b));
      EXPECT_NEAR(a.imag(), b.imag(), 1e-14 * std::abs(b));
    }
  }
}

TEST(Kappa, PointValues) {
  EXPECT_NEAR(kappa(study_params(), 1.0), 0.5783 * 1.4338 / (11.6641 - 1.0), 1e-15);
  const ModelParams ig({Variant::IgOU, 1.0, 1.0, 2.0, 0.0, 0.0, 0.1});
  EXPECT_NEAR(kappa(ig, 1.0), 1.0 / std::sqrt(2.0), 1e-15);
  // Published figure is rounded loosely; the closed form above is the check.
  EXPECT_NEAR(kappa(study_params(), 1.0), 0.077757, 1e-3 * 0.077757);
}

TEST(Kappa, MatchesLevyIntegralQuadrature) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelInputs in = study_inputs(v);
    const ModelParams p(in);
    const double uh = u_hat(p);
    for (double u : {-50.0, -20.0, -5.0, -1.0, -0.01, 0.01, 1.0, 0.5 * uh, 0.9 * uh, 0.99 * uh}) {
      const double want = nu_exp_moment(in, u);
      EXPECT_LE(std::abs(kappa(p, u) - want) / std::abs(want), 1e-8) << to_string(v) << " u=" << u;
    }
  }
}

TEST(Kappa, DomainError) {
  const ModelParams p = study_params();
  EXPECT_THROW(kappa(p, cplx(11.6641, 0.0)), DomainError);
  EXPECT_THROW(kappa(study_params(Variant::IgOU), cplx(70.0, 1.0)), DomainError);
}

TEST(UHat, Values) {
  EXPECT_DOUBLE_EQ(u_hat(study_params()), 11.6641);
  EXPECT_NEAR(u_hat(study_params(Variant::IgOU)), 68.0256, 1e-4);
  EXPECT_DOUBLE_EQ(u_hat(ModelParams({Variant::IgOU, 1.0, 1.0, 2.0, 0.0, 0.0, 0.1})), 2.0);
}

TEST(LevyMean, QuadratureAndFiniteDifference) {
  EXPECT_NEAR(levy_mean(study_params()), 0.5783 * 1.4338 / 11.6641, 1e-15);
  EXPECT_NEAR(levy_mean(study_params()), 0.071090, 1e-3 * 0.071090);
  EXPECT_DOUBLE_EQ(levy_mean(ModelParams({Variant::GammaOU, 1.0, 1.0, 1.0, 0.0, 0.0, 0.1})), 1.0);
  const ModelInputs ig{Variant::IgOU, 1.0, 1.0, 2.0, 0.0, 0.0, 0.1};
  EXPECT_NEAR(levy_mean(ModelParams(ig)), 0.5, 1e-15);
  for (auto in : {study_inputs(), study_inputs(Variant::IgOU), ig}) {
    const ModelParams p(in);
    const double m = levy_mean(p);
    EXPECT_LE(std::abs(nu_integral(in, [](double x) { return x; }) - m) / m, 1e-10);
    const double h = 1e-6;
    const double fd = (kappa(p, h) - kappa(p, -h)) / (2.0 * h);
    EXPECT_LE(std::abs(fd - m) / m, 1e-6);
  }
}

TEST(BFunction, Values) {
  EXPECT_EQ(b_function(0.5783, 0.0), 0.0);
  // Midpoint rule on e^{-lambda s} as the oracle.
  auto numeric = [](double lambda, double t) {
    const int n = 200000;
    const double h = t / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::exp(-lambda * (i + 0.5) * h);
    return acc * h;
  };
  EXPECT_NEAR(b_function(0.5783, 1.0), numeric(0.5783, 1.0), 1e-10);
  EXPECT_NEAR(b_function(0.5783, 1.0), 0.75930, 1e-3 * 0.75930);
  EXPECT_NEAR(b_function(0.5783, 0.0833), numeric(0.5783, 0.0833), 1e-10);
  EXPECT_NEAR(b_function(0.5783, 0.0833), 0.081317, 1e-3 * 0.081317);
}

TEST(VixCoefficients, StudyValues) {
  const ModelInputs in = study_inputs();
  const VixCoefficients c = vix_coefficients(ModelParams(in));
  EXPECT_NEAR(c.b_v, 0.9762, 1e-3);
  EXPECT_NEAR(c.c_v, 0.0204, 1e-4);
  // c_v from quadrature of both Levy integrals.
  const double mean = nu_integral(in, [](double x) { return x; });
  const double j0 = nu_integral(in, [&](double x) { return 1.0 + in.rho * x - std::exp(in.rho * x); });
  EXPECT_NEAR(c.c_v, (1.0 - c.b_v) * mean / in.lambda - 2.0 * j0, 1e-12);
}

TEST(VixCoefficients, NoLeverageDropsJumpTerm) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    ModelInputs in = study_inputs(v);
    in.rho = 0.0;
    const ModelParams p(in);
    const VixCoefficients c = vix_coefficients(p);
    EXPECT_NEAR(c.c_v, (1.0 - c.b_v) * levy_mean(p) / in.lambda, 1e-16);
  }
}

TEST(VixCoefficients, BvDecreasesWithTau) {
  double prev = 1.0;
  for (double tau : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    ModelInputs in = study_inputs();
    in.tau = tau;
    const double bv = vix_coefficients(ModelParams(in)).b_v;
    EXPECT_LT(bv, prev);
    prev = bv;
  }
}

TEST(VixCoefficients, PositiveForRandomParameters) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> lam(0.01, 5.0), a(0.1, 5.0), b(0.5, 50.0), rho(-5.0, 0.0),
      tau(0.01, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Variant v = i % 2 ? Variant::IgOU : Variant::GammaOU;
    const VixCoefficients c =
        vix_coefficients(ModelParams({v, lam(gen), a(gen), b(gen), rho(gen), 0.0, tau(gen)}));
    EXPECT_GT(c.c_v, 0.0);
    EXPECT_GT(c.b_v, 0.0);
    EXPECT_LT(c.b_v, 1.0);
  }
}

TEST(VixValue, StudyScalar) {
  const VixCoefficients c = vix_coefficients(study_params());
  EXPECT_NEAR(vix_value(c, 0.0145), 0.18588, 5e-4);
  EXPECT_DOUBLE_EQ(vix_value({1.0, 0.0}, 4.0), 2.0);
  EXPECT_NEAR(vix_value(c, 0.0), std::sqrt(c.c_v), 1e-16);
  EXPECT_NEAR(std::sqrt(c.c_v), 0.1429, 2e-4);
}

TEST(CRho, QuadratureAndZero) {
  for (auto in : {study_inputs(), ModelInputs{Variant::IgOU, 1.0, 1.0, 2.0, -1.0, 0.0, 0.1}}) {
    const double want = nu_integral(in, [&](double x) {
      const double e = std::expm1(in.rho * x);
      return e * e;
    });
    EXPECT_LE(std::abs(c_rho(ModelParams(in)) - want) / want, 1e-9);
    in.rho = 0.0;
    EXPECT_EQ(c_rho(ModelParams(in)), 0.0);
  }
}

TEST(CrossIntegral, MatchesComplexQuadrature) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelInputs in = study_inputs(v);
    const ModelParams p(in);
    for (double re : {-20.0, -3.0, -0.5, -0.01})
      for (double im : {-50.0, -5.0, 0.0, 0.5, 50.0}) {
        const cplx zeta(re, im);
        // x = y^2 tames the IG-OU x^{-1/2} endpoint; the oscillation e^{i Im x} needs the
        // y-range split finely, so integrate piecewise up to where nu has decayed.
        const double y_top = std::sqrt(60.0 / u_hat(p));
        auto f = [&](double y) {
          const double x = y * y;
          return (std::exp(zeta * x) - 1.0) * std::expm1(in.rho * x) * nu_density(in, x) * 2.0 * y;
        };
        cplx want{};
        const int pieces = 400;
        for (int k = 0; k < pieces; ++k)
          want += gk_complex(f, y_top * k / pieces, y_top * (k + 1) / pieces, 1e-13, 6);
        EXPECT_LE(rel_err(cross_integral(p, zeta), want), 1e-7) << to_string(v) << " zeta=" << zeta;
      }
  }
}

TEST(CrossIntegral, VanishesAtZeroAndWithoutLeverage) {
  const ModelParams p = study_params();
  EXPECT_LT(std::abs(cross_integral(p, cplx(-1e-12, 0.0))), 1e-12);
  ModelInputs in = study_inputs();
  in.rho = 0.0;
  EXPECT_EQ(cross_integral(ModelParams(in), cplx(-1.0, -0.5)), cplx(0.0, 0.0));
  const ModelParams ig({Variant::IgOU, 1.0, 1.0, 2.0, -1.0, 0.0, 0.1});
  EXPECT_NEAR(cross_integral(ig, cplx(-0.5, 0.0)).real(),
              kappa(ig, -1.5) - kappa(ig, -0.5) - kappa(ig, -1.0), 1e-15);
}

TEST(CrossIntegral, RejectsRealPartAtUHat) {
  EXPECT_THROW(cross_integral(study_params(), cplx(11.6641, 0.0)), DomainError);
}

TEST(CheckConditions, Reports) {
  const ConditionReport g = check_conditions(study_params(), 1.0);
  EXPECT_TRUE(g.u_hat_positive);
  EXPECT_NEAR(g.two_b_maturity, 2.0 * b_function(0.5783, 1.0), 1e-15);
  EXPECT_NEAR(g.two_b_maturity, 1.5186, 1e-3);
  EXPECT_TRUE(g.hedge_condition);
  EXPECT_FALSE(g.cf_integrable);
  EXPECT_TRUE(g.requires_eps);

  ModelInputs low_b = study_inputs();
  low_b.b = 1.0;
  EXPECT_FALSE(check_conditions(ModelParams(low_b), 1.0).hedge_condition);

  const ConditionReport ig =
      check_conditions(ModelParams({Variant::IgOU, 0.5783, 1.4338, 2.0, -1.2606, 0.0, 0.0833}), 1.0);
  EXPECT_TRUE(ig.hedge_condition);
  EXPECT_TRUE(ig.cf_integrable);
  EXPECT_FALSE(ig.requires_eps);
  EXPECT_THROW(check_conditions(study_params(), 0.0), DomainError);
}

TEST(LevyDensity, MatchesIndependentForm) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelInputs in = study_inputs(v);
    for (double x : {1e-6, 0.01, 0.3, 2.0})
      EXPECT_NEAR(levy_density(ModelParams(in), x), nu_density(in, x), 1e-13 * nu_density(in, x));
  }
  EXPECT_THROW(levy_density(study_params(), 0.0), DomainError);
}

#include <gtest/gtest.h>

#include <cstring>

#include "support.hpp"
#include "vixbns/errors.hpp"
#include "vixbns/oracle.hpp"
#include "vixbns/pricing.hpp"
#include "vixbns/sweep.hpp"

using namespace vixbns;
using namespace vixbns::test;

namespace {

double discount(double r, double dt) { return std::exp(-r * dt); }

}  // namespace

TEST(Price, IgMatchesDensityInversion) {
  const ModelParams p = study_params(Variant::IgOU);
  const auto q = default_settings(Variant::IgOU);
  const PriceResult r = price(p, study_state(), kMaturity, kAtmStrike, 1.75, q);
  const InversionResult inv = invert_density_price(p, study_state(), kMaturity, kAtmStrike);
  EXPECT_NEAR(r.price, inv.price, 1e-5);
  EXPECT_EQ(r.method, PriceMethod::Quadrature);
  EXPECT_DOUBLE_EQ(r.alpha_used, 1.75);
  EXPECT_LE(r.im_residual, q.abs_tol);
  EXPECT_FALSE(r.residual_warning);
}

TEST(Price, AlphaIndependence) {
  for (auto v : {Variant::IgOU, Variant::GammaOU}) {
    const ModelParams p = study_params(v);
    const auto q = default_settings(v);
    const double tol = v == Variant::IgOU ? 1e-6 : 1e-5;
    for (double K : {std::sqrt(vix_coefficients(p).c_v), kAtmStrike, 0.3}) {
      const double base = price(p, study_state(), kMaturity, K, 1.75, q).price;
      for (double a : {0.75, 3.0})
        EXPECT_NEAR(price(p, study_state(), kMaturity, K, a, q).price, base, tol)
            << to_string(v) << " K=" << K << " alpha=" << a;
    }
  }
}

TEST(PriceEps, StableInEpsilon) {
  const ModelParams p = study_params();
  auto q = default_settings(Variant::GammaOU);
  const double p4 = price_eps(p, study_state(), kMaturity, kAtmStrike, 1.75, q).price;
  q.eps = 1e-3;
  const double p3 = price_eps(p, study_state(), kMaturity, kAtmStrike, 1.75, q).price;
  EXPECT_LE(std::abs(p3 - p4), 1e-4);
  q.eps = 0.0;
  EXPECT_THROW(price_eps(p, study_state(), kMaturity, kAtmStrike, 1.75, q), DomainError);
}

TEST(Price, GammaWithoutEpsIsRejected) {
  auto q = default_settings(Variant::GammaOU);
  q.eps = 0.0;
  EXPECT_THROW(price(study_params(), study_state(), kMaturity, kAtmStrike, 1.75, q),
               IntegrabilityError);
  EXPECT_THROW(futures(study_params(), study_state(), kMaturity, q), IntegrabilityError);
}

TEST(Price, DomainErrors) {
  const ModelParams p = study_params();
  const auto q = default_settings(Variant::GammaOU);
  EXPECT_THROW(price(p, study_state(), kMaturity, 0.12, 1.75, q), DomainError);
  EXPECT_THROW(price(p, study_state(), kMaturity, kAtmStrike, 0.0, q), DomainError);
  EXPECT_THROW(price(p, study_state(), kMaturity, kAtmStrike, 11.7, q), DomainError);
  EXPECT_THROW(price(p, study_state(1.0), kMaturity, kAtmStrike, 1.75, q), DomainError);
  auto bad = q;
  bad.fft_size = 1000;
  EXPECT_THROW(price(p, study_state(), kMaturity, kAtmStrike, 1.75, bad), DomainError);
  bad = q;
  bad.v_max = -1.0;
  EXPECT_THROW(price(p, study_state(), kMaturity, kAtmStrike, 1.75, bad), DomainError);
}

TEST(Futures, ZeroStrikeZeroRateIsFutures) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    ModelInputs in = study_inputs(v);
    in.r = 0.0;
    const ModelParams p(in);
    const auto q = default_settings(v);
    EXPECT_NEAR(price(p, study_state(), kMaturity, 0.0, 1.75, q).price,
                futures(p, study_state(), kMaturity, q), 1e-12);
  }
}

TEST(Futures, JensenBounds) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelParams p = study_params(v);
    const auto q = default_settings(v);
    const VixCoefficients c = vix_coefficients(p);
    for (double t : {0.0, 0.5, 0.98}) {
      const double F = futures(p, study_state(t), kMaturity, q);
      const double m1 = conditional_mean(p, t, kMaturity, 0.0145);
      EXPECT_GT(F, std::sqrt(c.c_v));
      EXPECT_LT(F, std::sqrt(c.b_v * m1 + c.c_v));
    }
  }
}

TEST(Price, DeepInTheMoneyLowerBound) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelParams p = study_params(v);
    const auto q = default_settings(v);
    const double K = std::sqrt(vix_coefficients(p).c_v);
    const double F = futures(p, study_state(), kMaturity, q);
    const double P = price(p, study_state(), kMaturity, K, 1.75, q).price;
    EXPECT_GE(P, discount(p.r(), 0.5) * (F - K) - q.abs_tol);
  }
}

TEST(Price, ShapeOnStrikeGrid) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelParams p = study_params(v);
    const auto q = default_settings(v);
    const double F = futures(p, study_state(), kMaturity, q);
    const double df = discount(p.r(), 0.5);
    std::vector<double> prices;
    for (double K : axis_grid(0.12, 0.30, 0.02)) {
      const double P = call_price(p, study_state(), kMaturity, K, 1.75, q).price;
      EXPECT_GE(P, df * std::max(F - K, 0.0) - q.abs_tol) << "K=" << K;
      EXPECT_LE(P, df * F + q.abs_tol) << "K=" << K;
      prices.push_back(P);
    }
    for (std::size_t i = 1; i < prices.size(); ++i) EXPECT_LT(prices[i], prices[i - 1]);
    for (std::size_t i = 2; i < prices.size(); ++i)
      EXPECT_GE(prices[i] - 2.0 * prices[i - 1] + prices[i - 2], -1e-8);
  }
}

TEST(CallPrice, BelowFloorIsForwardMinusStrike) {
  const ModelParams p = study_params();
  const auto q = default_settings(Variant::GammaOU);
  const double F = futures(p, study_state(), kMaturity, q);
  const double P = call_price(p, study_state(), kMaturity, 0.12, 1.75, q).price;
  EXPECT_NEAR(P, discount(p.r(), 0.5) * (F - 0.12), 1e-9);
  EXPECT_THROW(call_price(p, study_state(), kMaturity, 0.0, 1.75, q), DomainError);
}

TEST(TruncatedPrice, GammaDivergesWithoutEpsAndSettlesWithIt) {
  const ModelParams p = study_params();
  const double tol = 1e-9;
  double prev = truncated_price(p, study_state(), kMaturity, kAtmStrike, 1.75, 0.0, 1024.0, tol).price;
  for (double V : {2048.0, 4096.0}) {
    const double next = truncated_price(p, study_state(), kMaturity, kAtmStrike, 1.75, 0.0, V, tol).price;
    EXPECT_GT(std::abs(next - prev), 10.0 * tol) << "v_max " << V;
    prev = next;
  }
  // With eps = 1e-4 the Gaussian factor e^{-eps^2 v^2 dt / 2} kills the tail past ~1e5.
  const double a = truncated_price(p, study_state(), kMaturity, kAtmStrike, 1.75, 1e-4, 4e5, tol).price;
  const double b = truncated_price(p, study_state(), kMaturity, kAtmStrike, 1.75, 1e-4, 8e5, tol).price;
  EXPECT_LT(std::abs(a - b), tol);
}

TEST(Fft, MatchesQuadratureOnStrikes) {
  for (auto v : {Variant::GammaOU, Variant::IgOU}) {
    const ModelParams p = study_params(v);
    const auto q = default_settings(v);
    const double floor = std::sqrt(vix_coefficients(p).c_v);
    std::vector<double> strikes = {0.0, floor, kAtmStrike, 0.2, 0.3};
    const auto fft = price_via_fft(p, study_state(), kMaturity, strikes, 1.75, q);
    ASSERT_EQ(fft.size(), strikes.size());
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      const double quad = price(p, study_state(), kMaturity, strikes[i], 1.75, q).price;
      EXPECT_NEAR(fft[i].price, quad, 10.0 * q.abs_tol) << to_string(v) << " K=" << strikes[i];
      EXPECT_EQ(fft[i].method, PriceMethod::Fft);
    }
  }
}

TEST(Fft, EmptyStrikeListGivesEmptyResult) {
  const auto q = default_settings(Variant::GammaOU);
  EXPECT_TRUE(price_via_fft(study_params(), study_state(), kMaturity, {}, 1.75, q).empty());
}

TEST(Fft, RejectsStrikeBelowFloor) {
  const auto q = default_settings(Variant::GammaOU);
  const double strikes[] = {0.2, 0.12};
  EXPECT_THROW(price_via_fft(study_params(), study_state(), kMaturity, strikes, 1.75, q), DomainError);
}

TEST(Fft, TimeBatchMatchesPerTimeFft) {
  const ModelParams p = study_params();
  const auto q = default_settings(Variant::GammaOU);
  const double times[] = {0.0, 0.4, 0.9};
  const auto batch = price_via_fft_times(p, study_state(), times, kMaturity, kAtmStrike, 1.75, q);
  for (std::size_t i = 0; i < 3; ++i) {
    const double quad = price(p, study_state(times[i]), kMaturity, kAtmStrike, 1.75, q).price;
    EXPECT_NEAR(batch[i].price, quad, 10.0 * q.abs_tol);
  }
}

TEST(Kernels, SerialAndParallelAreBitIdentical) {
  const ModelParams p = study_params();
  const VixCoefficients c = vix_coefficients(p);
  const std::size_t n = 1 << 15;
  std::vector<cplx> a(n), b(n);
  fill_cf_grid(p, study_state(), kMaturity, 1.75, 1e-4, -3e4, 1.9, 0.25, a, Exec::Serial);
  fill_cf_grid(p, study_state(), kMaturity, 1.75, 1e-4, -3e4, 1.9, 0.25, b, Exec::Parallel);
  EXPECT_EQ(std::memcmp(a.data(), b.data(), n * sizeof(cplx)), 0);
  fill_payoff_grid(1.75, kAtmStrike, c, -3e4, 1.9, a, Exec::Serial);
  fill_payoff_grid(1.75, kAtmStrike, c, -3e4, 1.9, b, Exec::Parallel);
  EXPECT_EQ(std::memcmp(a.data(), b.data(), n * sizeof(cplx)), 0);

  const auto q = default_settings(Variant::GammaOU);
  const double strikes[] = {0.15, 0.2, 0.25};
  const auto s = price_via_fft(p, study_state(), kMaturity, strikes, 1.75, q, Exec::Serial);
  const auto t = price_via_fft(p, study_state(), kMaturity, strikes, 1.75, q, Exec::Parallel);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s[i].price, t[i].price);
}

TEST(Kernels, PayoffGridIsPayoffKernel) {
  const VixCoefficients c = vix_coefficients(study_params());
  std::vector<cplx> out(64);
  fill_payoff_grid(1.75, 0.2, c, -10.0, 0.3, out, Exec::Serial);
  for (std::size_t j = 0; j < out.size(); ++j)
    EXPECT_EQ(out[j], payoff_kernel(-10.0 + static_cast<double>(j) * 0.3, 1.75, 0.2, c));
}

TEST(Settings, Defaults) {
  const auto g = default_settings(Variant::GammaOU);
  EXPECT_DOUBLE_EQ(g.eps, 1e-4);
  EXPECT_DOUBLE_EQ(g.abs_tol, 1e-9);
  EXPECT_EQ(g.fft_size, 1 << 14);
  EXPECT_DOUBLE_EQ(default_settings(Variant::IgOU).eps, 0.0);
}

#pragma once

// Shared fixtures and independent oracles. Oracles are written from the
// defining integrals with Boost.Math quadrature and never call the closed forms
// under test.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "vixbns/model.hpp"

namespace vixbns::test {

inline ModelInputs study_inputs(Variant v = Variant::GammaOU) {
  return {v, 0.5783, 1.4338, 11.6641, -1.2606, 0.007, 0.0833};
}

inline ModelParams study_params(Variant v = Variant::GammaOU) { return ModelParams(study_inputs(v)); }

inline MarketState study_state(double t = 0.5) { return {t, 1124.47, 0.0145}; }

inline constexpr double kMaturity = 1.0;
inline constexpr double kAtmStrike = 0.18588;

// Levy density written out independently of the library.
inline double nu_density(const ModelInputs& in, double x) {
  const double la = in.lambda * in.a;
  if (in.variant == Variant::GammaOU) return la * in.b * std::exp(-in.b * x);
  return la / (2.0 * std::sqrt(2.0 * std::numbers::pi)) * std::pow(x, -1.5) *
         (1.0 + in.b * in.b * x) * std::exp(-0.5 * in.b * in.b * x);
}

// int_0^inf f(x) nu(dx) for a real f, by exp-sinh on (0, inf).
template <class F>
double nu_integral(const ModelInputs& in, F f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto g = [&](double x) {
    const double d = nu_density(in, x);
    // Below x ~ 1e-200 the IG density overflows; that sliver contributes nothing.
    return d == 0.0 || !std::isfinite(d) ? 0.0 : f(x) * d;
  };
  return integrator.integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

// int_0^inf (e^{ux} - 1) nu(dx). The e^{ux} part is formed as exp(ux + log nu)
// so that it stays finite where e^{ux} alone overflows.
inline double nu_exp_moment(const ModelInputs& in, double u) {
  auto log_density = [&](double x) {
    const double la = in.lambda * in.a;
    if (in.variant == Variant::GammaOU) return std::log(la * in.b) - in.b * x;
    return std::log(la / (2.0 * std::sqrt(2.0 * std::numbers::pi))) - 1.5 * std::log(x) +
           std::log1p(in.b * in.b * x) - 0.5 * in.b * in.b * x;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  auto g = [&](double x) {
    const double ld = log_density(x);
    if (u * x < 1.0) {
      const double d = std::exp(ld);
      return std::isfinite(d) ? std::expm1(u * x) * d : 0.0;
    }
    return std::exp(u * x + ld) - std::exp(ld);
  };
  return integrator.integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

// Adaptive 61-point Gauss-Kronrod on [a, b].
template <class F>
double gk_integral(F f, double a, double b, double tol = 1e-14, unsigned max_depth = 12) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol);
}

template <class F>
std::complex<double> gk_complex(F f, double a, double b, double tol = 1e-14, unsigned max_depth = 12) {
  const double re = gk_integral([&](double x) { return f(x).real(); }, a, b, tol, max_depth);
  const double im = gk_integral([&](double x) { return f(x).imag(); }, a, b, tol, max_depth);
  return {re, im};
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace vixbns::test

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vixbns/charfn.hpp"
#include "vixbns/model.hpp"
#include "vixbns/transform.hpp"

namespace vixbns {

enum class Exec { Serial, Parallel };

struct QuadratureSettings {
  /// Frequency cutoff. nullopt sizes it from the integrand envelope so that
  /// the discarded tail stays below abs_tol / 4.
  std::optional<double> v_max;
  double abs_tol = 1e-9;
  int max_nodes = 8'000'000;
  /// Minimum FFT length; grown when the truncation or the aliasing bound needs more points.
  int fft_size = 1 << 14;
  double eps = 0.0;
  /// Hedging only: replace xi(eps) by (4 xi(eps) - xi(2 eps)) / 3.
  bool richardson = false;

  void validate() const;
};

/// eps = 1e-4 for gamma-OU (its characteristic function is not integrable), 0 for IG-OU.
QuadratureSettings default_settings(Variant v);

enum class PriceMethod { Quadrature, Fft };
std::string_view to_string(PriceMethod m);

struct PriceResult {
  double price = 0.0;
  double alpha_used = 0.0;
  double truncation_estimate = 0.0;  // bound on the discarded tail, in price units
  PriceMethod method = PriceMethod::Quadrature;
  double im_residual = 0.0;          // |Im| of the discounted integral
  double quad_error = 0.0;
  double v_max_used = 0.0;
  long evaluations = 0;
  bool residual_warning = false;     // im_residual > 100 abs_tol
};

/// e^{-r(T-t)} E[(V_T - K)^+ | sigma_t^2] by adaptive quadrature of the Fourier
/// integral. Dispatches on settings.eps; gamma-OU with eps == 0 throws
/// IntegrabilityError.
PriceResult price(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                  const QuadratureSettings& settings);

/// price() for any K > 0. Below sqrt(c_v) the payoff is V_T - K on every path,
/// so the call is e^{-r(T-t)} (F - K) with F from the K = 0 transform.
PriceResult call_price(const ModelParams& p, const MarketState& s, double T, double K,
                       double alpha, const QuadratureSettings& settings);

/// As price() but requires settings.eps > 0.
PriceResult price_eps(const ModelParams& p, const MarketState& s, double T, double K,
                      double alpha, const QuadratureSettings& settings);

/// E[V_T | sigma_t^2], undiscounted.
double futures(const ModelParams& p, const MarketState& s, double T,
               const QuadratureSettings& settings, double alpha = 1.75);

/// The Fourier integral cut at |v| <= v_max with no integrability check, so the
/// gamma-OU eps = 0 integral can be studied as v_max grows.
PriceResult truncated_price(const ModelParams& p, const MarketState& s, double T, double K,
                            double alpha, double eps, double v_max, double abs_tol);

/// Prices through
///   P = e^{-r(T-t)} / (2 pi) e^{alpha c_v / b_v} f_hat(c_v / b_v),
/// with f_hat the FFT of f(v) phi(-v - i alpha) and f the erfc factor of g_hat.
/// The output grid is offset so that c_v / b_v is a grid node.
std::vector<PriceResult> price_via_fft(const ModelParams& p, const MarketState& s, double T,
                                       std::span<const double> strikes, double alpha,
                                       const QuadratureSettings& settings,
                                       Exec exec = Exec::Parallel);

/// Grid kernels of the FFT route on v_j = v_lo + j dv, j < out.size().
/// fill_cf_grid writes w_j phi_eps(-v_j - i alpha) e^{-i j dv x0} (trapezoid end
/// weights w_j); fill_payoff_grid writes the erfc factor f(v_j).
/// The serial branches are the references for the OpenMP ones.
void fill_cf_grid(const ModelParams& p, const MarketState& s, double T, double alpha, double eps,
                  double v_lo, double dv, double x0, std::span<cplx> out, Exec exec);
void fill_payoff_grid(double alpha, double K, const VixCoefficients& c, double v_lo, double dv,
                      std::span<cplx> out, Exec exec);

/// FFT prices for one strike at several valuation times sharing spot and
/// sigma_t^2 (the at-the-money time sweep). The erfc factor is evaluated once on
/// a frequency grid common to all times.
std::vector<PriceResult> price_via_fft_times(const ModelParams& p, const MarketState& base,
                                             std::span<const double> times, double T, double K,
                                             double alpha, const QuadratureSettings& settings,
                                             Exec exec = Exec::Parallel);

/// Throws IntegrabilityError for gamma-OU with eps == 0.
void check_integrability(const ModelParams& p, double eps);

/// Validates (t < T, alpha in (0, u_hat), strike) and returns the coefficients.
VixCoefficients check_price_query(const ModelParams& p, const MarketState& s, double T,
                                  double K, double alpha);

}  // namespace vixbns

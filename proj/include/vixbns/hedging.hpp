#pragma once

#include "vixbns/pricing.hpp"

namespace vixbns {

struct HedgeResult {
  double xi = 0.0;     // units of the risky asset
  double eta = 0.0;    // discounted units of the riskless asset
  double price = 0.0;
  double alpha_used = 0.0;
  double eps_used = 0.0;
  double xi_double_eps = 0.0;  // xi at 2 eps; equals xi when eps == 0
  double xi_im_residual = 0.0;
  bool extrapolated = false;
};

/// Locally risk-minimizing position in the risky asset,
///   xi = e^{-r(T-t)} / (S (sigma_t^2 + C_rho)) (1/2pi)
///        Re int g_hat(v) phi_eps(-v - i alpha) X((alpha - i v) e^{-lambda(T-t)}) dv,
/// with X the closed-form cross_integral. Uses settings.eps; gamma-OU needs
/// eps > 0. Throws ConditionError unless 2 B(T) < u_hat.
double lrm_xi(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
              const QuadratureSettings& settings);

/// As lrm_xi but requires settings.eps > 0.
double lrm_xi_eps(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                  const QuadratureSettings& settings);

/// Riskless units e^{-rt} (P_t - xi S_t), so that the discounted value splits as
/// e^{-rt} P_t = xi e^{-rt} S_t + eta.
double eta_units(double price_t, double xi, const MarketState& s, const ModelParams& p);

/// Price, xi and eta together. With eps > 0 also reports xi at 2 eps and, if
/// settings.richardson is set, replaces xi by (4 xi(eps) - xi(2 eps)) / 3.
HedgeResult hedge(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                  const QuadratureSettings& settings);

}  // namespace vixbns

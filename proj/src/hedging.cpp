#include "vixbns/hedging.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fourier_line.hpp"
#include "vixbns/errors.hpp"

namespace vixbns {

namespace {

struct XiValue {
  double xi;
  double im_residual;
};

void check_hedge_condition(const ModelParams& p, double T) {
  const ConditionReport rep = check_conditions(p, T);
  if (!rep.hedge_condition)
    throw ConditionError("hedging: need 2 B(T) < u_hat, got 2 B(T) = " +
                         std::to_string(rep.two_b_maturity) + " and u_hat = " + std::to_string(rep.u_hat));
}

XiValue xi_integral(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                    double eps, const QuadratureSettings& settings) {
  settings.validate();
  check_integrability(p, eps);
  const VixCoefficients c = check_price_query(p, s, T, K, alpha);
  check_hedge_condition(p, T);

  const ConditionalCf cf(p, s.t, T, s.sigma_sq, eps);
  const double e = cf.decay();
  const double scale = std::exp(-p.r() * (T - s.t)) / (2.0 * std::numbers::pi);
  auto integrand = [&](double v) {
    return g_hat_unchecked(v, alpha, K, c) * cf(cplx(-v, -alpha)) *
           cross_integral(p, cplx(alpha * e, -v * e));
  };
  const auto li = detail::integrate_line(integrand, settings.v_max, settings.abs_tol / scale,
                                         settings.max_nodes, "hedge");
  const double denom = s.spot * (s.sigma_sq + c_rho(p));
  return {scale * li.value.real() / denom, scale * std::abs(li.value.imag()) / denom};
}

}  // namespace

double lrm_xi(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
              const QuadratureSettings& settings) {
  return xi_integral(p, s, T, K, alpha, settings.eps, settings).xi;
}

double lrm_xi_eps(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                  const QuadratureSettings& settings) {
  if (!(settings.eps > 0.0)) throw DomainError("lrm_xi_eps: eps must be > 0");
  return lrm_xi(p, s, T, K, alpha, settings);
}

double eta_units(double price_t, double xi, const MarketState& s, const ModelParams& p) {
  return std::exp(-p.r() * s.t) * (price_t - xi * s.spot);
}

HedgeResult hedge(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                  const QuadratureSettings& settings) {
  HedgeResult out;
  const XiValue x = xi_integral(p, s, T, K, alpha, settings.eps, settings);
  out.xi = x.xi;
  out.xi_im_residual = x.im_residual;
  out.xi_double_eps = x.xi;
  if (settings.eps > 0.0) {
    out.xi_double_eps = xi_integral(p, s, T, K, alpha, 2.0 * settings.eps, settings).xi;
    if (settings.richardson) {
      out.xi = (4.0 * out.xi - out.xi_double_eps) / 3.0;
      out.extrapolated = true;
    }
  }
  out.price = price(p, s, T, K, alpha, settings).price;
  out.alpha_used = alpha;
  out.eps_used = settings.eps;
  out.eta = eta_units(out.price, out.xi, s, p);
  return out;
}

}  // namespace vixbns

#include "vixbns/pricing.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fourier_line.hpp"
#include "vixbns/errors.hpp"

namespace vixbns {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double discount(const ModelParams& p, double dt) { return std::exp(-p.r() * dt); }

PriceResult fourier_price(const ModelParams& p, const MarketState& s, double T, double K,
                          double alpha, double eps, std::optional<double> v_max, double abs_tol,
                          int max_nodes, double scale) {
  const VixCoefficients c = check_price_query(p, s, T, K, alpha);
  const ConditionalCf cf(p, s.t, T, s.sigma_sq, eps);
  auto integrand = [&](double v) { return g_hat_unchecked(v, alpha, K, c) * cf(cplx(-v, -alpha)); };
  const auto li = detail::integrate_line(integrand, v_max, abs_tol / scale, max_nodes, "price");

  PriceResult r;
  r.price = scale * li.value.real();
  r.alpha_used = alpha;
  r.truncation_estimate = scale * li.truncation;
  r.method = PriceMethod::Quadrature;
  r.im_residual = scale * std::abs(li.value.imag());
  r.quad_error = scale * li.quad_error;
  r.v_max_used = li.v_max;
  r.evaluations = li.evaluations;
  r.residual_warning = r.im_residual > 100.0 * abs_tol;
  return r;
}

}  // namespace

void QuadratureSettings::validate() const {
  if (v_max && !(*v_max > 0.0 && std::isfinite(*v_max)))
    throw DomainError("settings: v_max must be > 0");
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw DomainError("settings: abs_tol must be > 0");
  if (max_nodes < 1000) throw DomainError("settings: max_nodes must be >= 1000");
  if (fft_size < 256 || !std::has_single_bit(static_cast<unsigned>(fft_size)))
    throw DomainError("settings: fft_size must be a power of two >= 256");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("settings: eps must be >= 0");
}

QuadratureSettings default_settings(Variant v) {
  QuadratureSettings s;
  s.eps = v == Variant::GammaOU ? 1e-4 : 0.0;
  return s;
}

std::string_view to_string(PriceMethod m) { return m == PriceMethod::Fft ? "fft" : "quadrature"; }

void check_integrability(const ModelParams& p, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("pricing: eps must be >= 0");
  if (p.variant() == Variant::GammaOU && eps == 0.0)
    throw IntegrabilityError(
        "pricing: the gamma-OU characteristic function is not integrable against the payoff "
        "transform; price with eps > 0");
}

VixCoefficients check_price_query(const ModelParams& p, const MarketState& s, double T, double K,
                                  double alpha) {
  s.validate();
  if (!(T > s.t) || !std::isfinite(T)) throw DomainError("pricing: need t < T");
  if (!(alpha > 0.0 && alpha < u_hat(p)))
    throw DomainError("pricing: alpha must lie in (0, u_hat) = (0, " + std::to_string(u_hat(p)) + ")");
  const VixCoefficients c = vix_coefficients(p);
  check_strike(alpha, K, c);
  return c;
}

PriceResult price(const ModelParams& p, const MarketState& s, double T, double K, double alpha,
                  const QuadratureSettings& settings) {
  settings.validate();
  check_integrability(p, settings.eps);
  return fourier_price(p, s, T, K, alpha, settings.eps, settings.v_max, settings.abs_tol,
                       settings.max_nodes, discount(p, T - s.t) / kTwoPi);
}

PriceResult call_price(const ModelParams& p, const MarketState& s, double T, double K,
                       double alpha, const QuadratureSettings& settings) {
  if (!(K > 0.0)) throw DomainError("call_price: K must be > 0");
  if (K >= std::sqrt(vix_coefficients(p).c_v)) return price(p, s, T, K, alpha, settings);
  PriceResult r = price(p, s, T, 0.0, alpha, settings);
  r.price -= discount(p, T - s.t) * K;
  return r;
}

PriceResult price_eps(const ModelParams& p, const MarketState& s, double T, double K,
                      double alpha, const QuadratureSettings& settings) {
  if (!(settings.eps > 0.0)) throw DomainError("price_eps: eps must be > 0");
  return price(p, s, T, K, alpha, settings);
}

double futures(const ModelParams& p, const MarketState& s, double T,
               const QuadratureSettings& settings, double alpha) {
  settings.validate();
  check_integrability(p, settings.eps);
  return fourier_price(p, s, T, 0.0, alpha, settings.eps, settings.v_max, settings.abs_tol,
                       settings.max_nodes, 1.0 / kTwoPi)
      .price;
}

PriceResult truncated_price(const ModelParams& p, const MarketState& s, double T, double K,
                            double alpha, double eps, double v_max, double abs_tol) {
  if (!(eps >= 0.0)) throw DomainError("truncated_price: eps must be >= 0");
  QuadratureSettings q;
  q.v_max = v_max;
  q.abs_tol = abs_tol;
  q.validate();
  return fourier_price(p, s, T, K, alpha, eps, v_max, abs_tol, q.max_nodes,
                       discount(p, T - s.t) / kTwoPi);
}

}  // namespace vixbns

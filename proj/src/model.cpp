#include "vixbns/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vixbns/errors.hpp"

namespace vixbns {

std::string_view to_string(Variant v) {
  return v == Variant::GammaOU ? "gamma" : "ig";
}

ModelParams::ModelParams(const ModelInputs& in) : in_(in) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(in.lambda)) throw DomainError("model: lambda must be > 0");
  if (!positive(in.a)) throw DomainError("model: a must be > 0");
  if (!positive(in.b)) throw DomainError("model: b must be > 0");
  if (!std::isfinite(in.rho) || in.rho > 0.0) throw DomainError("model: rho must be <= 0");
  if (!std::isfinite(in.r) || in.r < 0.0) throw DomainError("model: r must be >= 0");
  if (!positive(in.tau)) throw DomainError("model: tau must be > 0");
}

double ModelParams::mu() const { return -kappa(*this, in_.rho); }

void MarketState::validate() const {
  if (!std::isfinite(spot) || spot <= 0.0) throw DomainError("state: spot must be > 0");
  if (!std::isfinite(sigma_sq) || sigma_sq <= 0.0)
    throw DomainError("state: sigma_sq must be > 0");
  if (!std::isfinite(t) || t < 0.0) throw DomainError("state: t must be >= 0");
}

double u_hat(const ModelParams& p) {
  return p.variant() == Variant::GammaOU ? p.b() : 0.5 * p.b() * p.b();
}

cplx kappa(const ModelParams& p, cplx u) {
  if (!(u.real() < u_hat(p)))
    throw DomainError("kappa: Re(u) must be below u_hat = " + std::to_string(u_hat(p)));
  const double la = p.lambda() * p.a();
  if (p.variant() == Variant::GammaOU) return la * u / (p.b() - u);
  // Re(b^2 - 2u) > 0, so the principal root is continuous here.
  return la * u / std::sqrt(p.b() * p.b() - 2.0 * u);
}

double kappa(const ModelParams& p, double u) { return kappa(p, cplx(u, 0.0)).real(); }

double levy_density(const ModelParams& p, double x) {
  if (!(x > 0.0)) throw DomainError("levy_density: x must be > 0");
  const double la = p.lambda() * p.a();
  const double b = p.b();
  if (p.variant() == Variant::GammaOU) return la * b * std::exp(-b * x);
  return la / (2.0 * std::sqrt(2.0 * std::numbers::pi)) * std::pow(x, -1.5) * (1.0 + b * b * x) *
         std::exp(-0.5 * b * b * x);
}

double levy_mean(const ModelParams& p) { return p.lambda() * p.a() / p.b(); }

double b_function(double lambda, double t) { return -std::expm1(-lambda * t) / lambda; }

VixCoefficients vix_coefficients(const ModelParams& p) {
  const double bv = b_function(p.lambda(), p.tau()) / p.tau();
  const double mean = levy_mean(p);
  // int (1 + rho x - e^{rho x}) nu(dx), nonpositive
  const double j0 = p.rho() * mean - kappa(p, p.rho());
  return {bv, (1.0 - bv) * mean / p.lambda() - 2.0 * j0};
}

double vix_value(const VixCoefficients& c, double sigma_sq) {
  return std::sqrt(c.b_v * sigma_sq + c.c_v);
}

double c_rho(const ModelParams& p) {
  if (p.rho() == 0.0) return 0.0;
  return kappa(p, 2.0 * p.rho()) - 2.0 * kappa(p, p.rho());
}

cplx cross_integral(const ModelParams& p, cplx zeta) {
  const double uh = u_hat(p);
  if (!(zeta.real() < uh))
    throw DomainError("cross_integral: Re(zeta) must be below u_hat = " + std::to_string(uh));
  const double rho = p.rho();
  if (p.variant() == Variant::GammaOU) {
    const double b = p.b();
    return p.a() * b * p.lambda() *
           (1.0 / (b - zeta - rho) - 1.0 / (b - zeta) - 1.0 / (b - rho) + 1.0 / b);
  }
  return kappa(p, zeta + rho) - kappa(p, zeta) - kappa(p, cplx(rho, 0.0));
}

ConditionReport check_conditions(const ModelParams& p, double maturity) {
  if (!(maturity > 0.0)) throw DomainError("check_conditions: maturity must be > 0");
  ConditionReport rep;
  rep.u_hat = u_hat(p);
  rep.two_b_maturity = 2.0 * b_function(p.lambda(), maturity);
  rep.u_hat_positive = rep.u_hat > 0.0;
  rep.cf_integrable = p.variant() == Variant::IgOU;
  rep.cf_bounded = true;
  rep.hedge_condition = rep.two_b_maturity < rep.u_hat;
  rep.requires_eps = !rep.cf_integrable;
  return rep;
}

}  // namespace vixbns

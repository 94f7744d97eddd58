#pragma once

#include "vixbns/model.hpp"

namespace vixbns {

/// phi_{T|t}(zeta) = E[exp(i zeta sigma_T^2) | sigma_t^2]; defined for Im(zeta) > -u_hat.
struct CharFnQuery {
  double t = 0.0;
  double T = 0.0;
  double sigma_sq_t = 0.0;
  cplx zeta{};
};

/// int_t^T kappa(i zeta e^{-lambda(T-s)}) ds.
///
/// After the substitution x = e^{-lambda(T-s)} this is
/// int_{e^{-lambda(T-t)}}^1 a i zeta / (b - i zeta x) dx (gamma-OU) or
/// int_{e^{-lambda(T-t)}}^1 a i zeta / sqrt(b^2 - 2 i zeta x) dx (IG-OU);
/// both are evaluated in closed form.
cplx kappa_integral(const ModelParams& p, double t, double T, cplx zeta);

cplx phi(const ModelParams& p, const CharFnQuery& q);

/// phi times the characteristic function of eps (W_T - W_t).
cplx phi_eps(const ModelParams& p, const CharFnQuery& q, double eps);

/// |exp(kappa_integral(v - i alpha))| for gamma-OU, via the modulus formula.
double phi_tail_magnitude_gamma(const ModelParams& p, double t, double T, double v,
                                double alpha);

/// E[sigma_T^2 | sigma_t^2] = e^{-lambda dt} sigma_t^2 + (a/b)(1 - e^{-lambda dt}).
double conditional_mean(const ModelParams& p, double t, double T, double sigma_sq_t);

/// Hot-path evaluator with the (t, T, sigma_t^2, eps) dependence hoisted out.
/// Performs no domain checks; callers validate zeta once per integral.
class ConditionalCf {
 public:
  ConditionalCf(const ModelParams& p, double t, double T, double sigma_sq_t, double eps = 0.0);

  cplx operator()(cplx zeta) const { return std::exp(log_value(zeta)); }
  cplx log_value(cplx zeta) const;
  cplx log_kappa_integral(cplx zeta) const;

  double decay() const noexcept { return decay_; }  // e^{-lambda(T-t)}
  double horizon() const noexcept { return horizon_; }

 private:
  Variant variant_;
  double a_, b_;
  double decay_, horizon_, sigma_sq_, eps_;
};

}  // namespace vixbns

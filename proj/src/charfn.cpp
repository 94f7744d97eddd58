#include "vixbns/charfn.hpp"

#include <cmath>
#include <string>

#include "vixbns/errors.hpp"

namespace vixbns {

namespace {

void check_horizon(double t, double T) {
  if (!(t >= 0.0) || !(T >= t)) throw DomainError("charfn: need 0 <= t <= T");
}

void check_zeta(const ModelParams& p, cplx zeta) {
  if (!(zeta.imag() > -u_hat(p)))
    throw DomainError("charfn: Im(zeta) must exceed -u_hat = " + std::to_string(-u_hat(p)));
}

// Gamma-OU:
//   a [ b Re(z) I(x) i - (1/2) log(A x^2 + B x + C) ]_{e}^{1}
// with A = |z|^2, B = 2 b Im z, C = b^2 and
//   b Re(z) I(x) = sgn(Re z) arctan((|z|^2 x + b Im z) / (b |Re z|)).
// The arctan difference is folded into one atan2 and the log ratio into log1p
// so that neither cancels for small |z| or small |Re z|.
cplx gamma_integral(double a, double b, double e, cplx z) {
  const double zr = z.real(), zi = z.imag();
  const double n2 = zr * zr + zi * zi;
  if (n2 == 0.0) return {0.0, 0.0};
  const double br = b * std::abs(zr);
  const double hi = n2 + b * zi;      // numerator at x = 1
  const double lo = n2 * e + b * zi;  // numerator at x = e
  double arg = 0.0;
  if (zr != 0.0) {
    arg = std::atan2(n2 * (1.0 - e) * br, br * br + hi * lo);
    if (zr < 0.0) arg = -arg;
  }
  const double den = n2 * e * e + 2.0 * b * zi * e + b * b;
  const double diff = n2 * (1.0 - e * e) + 2.0 * b * zi * (1.0 - e);
  const double re = -0.5 * a * std::log1p(diff / den);
  return {re, a * arg};
}

// IG-OU: the antiderivative of a i z / sqrt(b^2 - 2 i z x) is -a sqrt(b^2 - 2 i z x), so
//   a (sqrt(b^2 - 2 i z e) - sqrt(b^2 - 2 i z)) = 2 a i z (1 - e) / (sqrt(.. e) + sqrt(..)).
// Re(b^2 - 2 i z x) = b^2 + 2 x Im z > 0 on the domain, so principal roots are continuous.
cplx ig_integral(double a, double b, double e, cplx z) {
  const cplx iz(-z.imag(), z.real());
  const cplx s1 = std::sqrt(b * b - 2.0 * iz);
  const cplx se = std::sqrt(b * b - 2.0 * iz * e);
  return 2.0 * a * iz * (1.0 - e) / (s1 + se);
}

}  // namespace

ConditionalCf::ConditionalCf(const ModelParams& p, double t, double T, double sigma_sq_t,
                             double eps)
    : variant_(p.variant()),
      a_(p.a()),
      b_(p.b()),
      decay_(std::exp(-p.lambda() * (T - t))),
      horizon_(T - t),
      sigma_sq_(sigma_sq_t),
      eps_(eps) {}

cplx ConditionalCf::log_kappa_integral(cplx zeta) const {
  if (horizon_ == 0.0) return {0.0, 0.0};
  return variant_ == Variant::GammaOU ? gamma_integral(a_, b_, decay_, zeta)
                                      : ig_integral(a_, b_, decay_, zeta);
}

cplx ConditionalCf::log_value(cplx zeta) const {
  const cplx iz(-zeta.imag(), zeta.real());
  cplx expo = iz * decay_ * sigma_sq_ + log_kappa_integral(zeta);
  if (eps_ > 0.0) expo -= 0.5 * zeta * zeta * eps_ * eps_ * horizon_;
  return expo;
}

cplx kappa_integral(const ModelParams& p, double t, double T, cplx zeta) {
  check_horizon(t, T);
  check_zeta(p, zeta);
  return ConditionalCf(p, t, T, 1.0).log_kappa_integral(zeta);
}

cplx phi(const ModelParams& p, const CharFnQuery& q) {
  check_horizon(q.t, q.T);
  check_zeta(p, q.zeta);
  return ConditionalCf(p, q.t, q.T, q.sigma_sq_t)(q.zeta);
}

cplx phi_eps(const ModelParams& p, const CharFnQuery& q, double eps) {
  if (!(eps > 0.0)) throw DomainError("phi_eps: eps must be > 0");
  check_horizon(q.t, q.T);
  check_zeta(p, q.zeta);
  return ConditionalCf(p, q.t, q.T, q.sigma_sq_t, eps)(q.zeta);
}

double phi_tail_magnitude_gamma(const ModelParams& p, double t, double T, double v,
                                double alpha) {
  const double e = std::exp(-p.lambda() * (T - t));
  const double b = p.b();
  const double num = v * v + (alpha - b) * (alpha - b);
  const double den = v * v * e * e + (alpha * e - b) * (alpha * e - b);
  return std::pow(std::abs(num / den), -0.5 * p.a());
}

double conditional_mean(const ModelParams& p, double t, double T, double sigma_sq_t) {
  const double e = std::exp(-p.lambda() * (T - t));
  return e * sigma_sq_t + (p.a() / p.b()) * (1.0 - e);
}

}  // namespace vixbns

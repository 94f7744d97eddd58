#pragma once

#include <complex>
#include <string_view>

namespace vixbns {

using cplx = std::complex<double>;

/// Stationary law of the squared volatility; fixes the Levy measure of the BDLP.
enum class Variant { GammaOU, IgOU };

std::string_view to_string(Variant v);

/// Raw inputs for ModelParams. Validated by the ModelParams constructor.
struct ModelInputs {
  Variant variant = Variant::GammaOU;
  double lambda = 0.0;  // mean-reversion rate, 1/years
  double a = 0.0;       // shape
  double b = 0.0;       // scale
  double rho = 0.0;     // leverage, <= 0
  double r = 0.0;       // interest rate, 1/years
  double tau = 0.0;     // VIX observation window, years
};

/// Immutable, validated BNS model parameters.
///
/// Levy measures (of the time-changed subordinator H_{lambda t}):
///   gamma-OU:  nu(dx) = lambda a b exp(-b x) dx
///   IG-OU:     nu(dx) = lambda a / (2 sqrt(2 pi)) x^{-3/2} (1 + b^2 x) exp(-b^2 x / 2) dx
class ModelParams {
 public:
  explicit ModelParams(const ModelInputs& in);

  Variant variant() const noexcept { return in_.variant; }
  double lambda() const noexcept { return in_.lambda; }
  double a() const noexcept { return in_.a; }
  double b() const noexcept { return in_.b; }
  double rho() const noexcept { return in_.rho; }
  double r() const noexcept { return in_.r; }
  double tau() const noexcept { return in_.tau; }
  const ModelInputs& inputs() const noexcept { return in_; }

  /// Martingale drift correction mu = int (1 - e^{rho x}) nu(dx) = -kappa(rho).
  double mu() const;

 private:
  ModelInputs in_;
};

/// Asset state at the valuation time.
struct MarketState {
  double t = 0.0;
  double spot = 0.0;
  double sigma_sq = 0.0;

  /// Throws DomainError unless spot > 0, sigma_sq > 0 and t >= 0.
  void validate() const;
};

/// V_t = sqrt(b_v sigma_t^2 + c_v).
struct VixCoefficients {
  double b_v = 0.0;
  double c_v = 0.0;
};

/// Cumulant kappa(u) = int (e^{ux} - 1) nu(dx). Throws DomainError if Re(u) >= u_hat.
cplx kappa(const ModelParams& p, cplx u);
double kappa(const ModelParams& p, double u);

/// sup{u : kappa(u) < inf}: b for gamma-OU, b^2/2 for IG-OU.
double u_hat(const ModelParams& p);

/// Density of nu at x > 0 (see ModelParams for the two forms).
double levy_density(const ModelParams& p, double x);

/// int x nu(dx) = lambda a / b (both variants).
double levy_mean(const ModelParams& p);

/// B(t) = (1 - e^{-lambda t}) / lambda.
double b_function(double lambda, double t);

VixCoefficients vix_coefficients(const ModelParams& p);

double vix_value(const VixCoefficients& c, double sigma_sq);

/// C_rho = int (e^{rho x} - 1)^2 nu(dx) = kappa(2 rho) - 2 kappa(rho).
double c_rho(const ModelParams& p);

/// int (e^{zeta x} - 1)(e^{rho x} - 1) nu(dx) = kappa(zeta + rho) - kappa(zeta) - kappa(rho).
///
/// The integral converges for Re(zeta) < u_hat, which is the domain accepted
/// here; the hedge integrand evaluates it at Re(zeta) = alpha e^{-lambda(T-t)} > 0.
cplx cross_integral(const ModelParams& p, cplx zeta);

struct ConditionReport {
  double u_hat = 0.0;
  double two_b_maturity = 0.0;  // 2 B(T)
  bool u_hat_positive = false;
  // int |phi(v - i alpha)| / (1 + |v|) dv < inf: holds for IG-OU, fails for gamma-OU.
  bool cf_integrable = false;
  // sup_v |phi(v - i alpha)| < inf: holds for both variants.
  bool cf_bounded = false;
  // int_1^inf exp(2 B(T) x) nu(dx) < inf, i.e. 2 B(T) < u_hat.
  bool hedge_condition = false;
  // Pricing must go through the eps-regularised integral.
  bool requires_eps = false;
};

ConditionReport check_conditions(const ModelParams& p, double maturity);

}  // namespace vixbns

#include "vixbns/sweep.hpp"

#include <cmath>
#include <exception>

#include "vixbns/errors.hpp"

namespace vixbns {

namespace {

// Strike actually fed to the transforms: below sqrt(c_v) the call is V_T - K on
// every path, which prices and hedges like the K = 0 claim.
double effective_strike(double K, const VixCoefficients& c) {
  return K < std::sqrt(c.c_v) ? 0.0 : K;
}

// Runs body(i) for every index; the first failure by index is rethrown so that
// error reporting does not depend on scheduling.
template <class Body>
void run_points(long n, Exec exec, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto guarded = [&](long i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) guarded(i);
  } else {
    for (long i = 0; i < n; ++i) guarded(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double hedge_ratio(const ModelParams& p, const MarketState& s, double T, double K_eff,
                   double alpha, const QuadratureSettings& settings) {
  if (!settings.richardson) return lrm_xi(p, s, T, K_eff, alpha, settings);
  QuadratureSettings no_price = settings;
  const double xi1 = lrm_xi(p, s, T, K_eff, alpha, no_price);
  no_price.eps = 2.0 * settings.eps;
  const double xi2 = lrm_xi(p, s, T, K_eff, alpha, no_price);
  return settings.eps > 0.0 ? (4.0 * xi1 - xi2) / 3.0 : xi1;
}

void fill_point(SweepPoint& out, const ModelParams& p, const MarketState& s, double T, double K,
                double alpha, const QuadratureSettings& settings, const PriceResult& pr,
                bool hedge) {
  out.t = s.t;
  out.T = T;
  out.K = K;
  out.alpha = alpha;
  out.eps = settings.eps;
  out.price = pr.price;
  out.im_residual = pr.im_residual;
  out.method = pr.method;
  if (hedge) {
    out.xi = hedge_ratio(p, s, T, effective_strike(K, vix_coefficients(p)), alpha, settings);
    out.eta = eta_units(out.price, out.xi, s, p);
  }
}

void check_strike_positive(double K) {
  if (!(K > 0.0)) throw DomainError("sweep: strikes must be > 0");
}

}  // namespace

std::vector<double> axis_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo))
    throw DomainError("axis_grid: need finite lo <= hi");
  if (!(step > 0.0)) throw DomainError("axis_grid: step must be > 0");
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

std::vector<SweepPoint> sweep_times(const ModelParams& p, const MarketState& base,
                                    std::span<const double> times, double T, double K,
                                    double alpha, const QuadratureSettings& settings,
                                    const SweepOptions& opts) {
  check_strike_positive(K);
  const long n = static_cast<long>(times.size());
  std::vector<SweepPoint> out(times.size());
  if (n == 0) return out;
  const double K_eff = effective_strike(K, vix_coefficients(p));
  auto state_at = [&](long i) {
    MarketState s = base;
    s.t = times[i];
    return s;
  };

  std::vector<PriceResult> prices;
  if (opts.method == PriceMethod::Fft) {
    prices = price_via_fft_times(p, base, times, T, K_eff, alpha, settings, opts.exec);
    if (K_eff != K)
      for (long i = 0; i < n; ++i) prices[i].price -= std::exp(-p.r() * (T - times[i])) * K;
  } else {
    prices.resize(times.size());
  }
  run_points(n, opts.exec, [&](long i) {
    const MarketState s = state_at(i);
    if (opts.method == PriceMethod::Quadrature) prices[i] = call_price(p, s, T, K, alpha, settings);
    fill_point(out[i], p, s, T, K, alpha, settings, prices[i], opts.hedge);
  });
  return out;
}

std::vector<SweepPoint> sweep_strikes(const ModelParams& p, const MarketState& s, double T,
                                      std::span<const double> strikes, double alpha,
                                      const QuadratureSettings& settings,
                                      const SweepOptions& opts) {
  for (double K : strikes) check_strike_positive(K);
  const long n = static_cast<long>(strikes.size());
  std::vector<SweepPoint> out(strikes.size());
  if (n == 0) return out;
  const VixCoefficients c = vix_coefficients(p);

  std::vector<PriceResult> prices;
  if (opts.method == PriceMethod::Fft) {
    std::vector<double> eff(strikes.size());
    for (long i = 0; i < n; ++i) eff[i] = effective_strike(strikes[i], c);
    prices = price_via_fft(p, s, T, eff, alpha, settings, opts.exec);
    const double df = std::exp(-p.r() * (T - s.t));
    for (long i = 0; i < n; ++i)
      if (eff[i] != strikes[i]) prices[i].price -= df * strikes[i];
  } else {
    prices.resize(strikes.size());
  }
  run_points(n, opts.exec, [&](long i) {
    if (opts.method == PriceMethod::Quadrature)
      prices[i] = call_price(p, s, T, strikes[i], alpha, settings);
    fill_point(out[i], p, s, T, strikes[i], alpha, settings, prices[i], opts.hedge);
  });
  return out;
}

}  // namespace vixbns

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fftw_util.hpp"
#include "fourier_line.hpp"
#include "vixbns/errors.hpp"
#include "vixbns/pricing.hpp"

namespace vixbns {

namespace {

using detail::make_buffer;
using detail::plan_cache;
using detail::FftwBuffer;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smallest 2^a 3^b 5^c 7^d >= n; FFTW is fast on these lengths.
long smooth_length(long target) {
  long best = static_cast<long>(std::bit_ceil(static_cast<unsigned long>(target)));
  for (long p7 = 1; p7 < best; p7 *= 7)
    for (long p5 = p7; p5 < best; p5 *= 5)
      for (long p3 = p5; p3 < best; p3 *= 3) {
        long m = p3;
        while (m < target) m *= 2;
        best = std::min(best, m);
      }
  return best;
}

// The trapezoid sum aliases f_hat(x* + m L), L = 2 pi / dv. f_hat decays like
// e^{-alpha x} as x -> inf and like e^{-(u_hat - alpha)|x|} as x -> -inf.
double grid_step(const ModelParams& p, double alpha, double tol) {
  const double rate = std::min(alpha, u_hat(p) - alpha);
  return kTwoPi * rate / (std::log(1.0 / tol) + 8.0);
}

// Half-length h of an even, FFT-friendly grid with n = 2h >= fft_size and h dv >= V.
long grid_half(double V, double dv, int fft_size) {
  const double need = std::max(std::ceil(V / dv), 0.5 * fft_size);
  if (need > 0x1p29) throw NumericalError("fft: required grid exceeds 2^30 points");
  return smooth_length(static_cast<long>(need));
}

// Forward FFT of a product grid on v_j = (j - h) dv and the value of
// f_hat(x) = sum_j F_j e^{-i v_j x} dv at x*, which the output offset puts on node h.
class NodeTransform {
 public:
  NodeTransform(long half, double dv, double x_star)
      : half_(half),
        n_(2 * half),
        dv_(dv),
        dx_(kTwoPi / (static_cast<double>(n_) * dv)),
        x_star_(x_star),
        x0_(x_star - static_cast<double>(half) * dx_),
        buf_(make_buffer(static_cast<std::size_t>(n_))),
        plan_(plan_cache().get(n_)) {}

  std::span<cplx> work() {
    return {reinterpret_cast<cplx*>(buf_.get()), static_cast<std::size_t>(n_)};
  }
  double v_lo() const { return -static_cast<double>(half_) * dv_; }
  double x0() const { return x0_; }
  long size() const { return n_; }

  cplx evaluate() {
    fftw_execute_dft(plan_, buf_.get(), buf_.get());
    const auto w = work();
    const cplx front = dv_ * std::exp(cplx(0.0, -v_lo() * x0_));
    auto node = [&](long k) { return front * w[k] * ((k % 2 == 0) ? 1.0 : -1.0); };

    // Cubic interpolation; exact at the node itself.
    const double pos = (x_star_ - x0_) / dx_;
    const long k0 = static_cast<long>(std::floor(pos + 1e-9));
    if (k0 < 1 || k0 + 2 >= n_) throw NumericalError("fft: c_v / b_v falls outside the output grid");
    const double u = std::max(0.0, pos - k0);
    const cplx fm = node(k0 - 1), f0 = node(k0), f1 = node(k0 + 1), f2 = node(k0 + 2);
    return -u * (u - 1.0) * (u - 2.0) / 6.0 * fm + (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0 * f0 -
           (u + 1.0) * u * (u - 2.0) / 2.0 * f1 + (u + 1.0) * u * (u - 1.0) / 6.0 * f2;
  }

 private:
  long half_, n_;
  double dv_, dx_, x_star_, x0_;
  FftwBuffer buf_;
  fftw_plan plan_;
};

template <class Body>
void for_each_index(long n, Exec exec, Body&& body) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n; ++j) body(j);
  } else {
    for (long j = 0; j < n; ++j) body(j);
  }
}

struct TimePoint {
  MarketState state;
  double scale;
  double cutoff;
  long half;
};

PriceResult make_result(cplx fhat, double scale, double alpha, const VixCoefficients& c,
                        double V, long n, double tail, double abs_tol) {
  const double lift = scale * std::exp(alpha * c.c_v / c.b_v);
  PriceResult r;
  r.price = lift * fhat.real();
  r.alpha_used = alpha;
  r.method = PriceMethod::Fft;
  r.im_residual = lift * std::abs(fhat.imag());
  r.truncation_estimate = scale * tail;
  r.v_max_used = V;
  r.evaluations = n;
  r.residual_warning = r.im_residual > 100.0 * abs_tol;
  return r;
}

}  // namespace

void fill_cf_grid(const ModelParams& p, const MarketState& s, double T, double alpha, double eps,
                  double v_lo, double dv, double x0, std::span<cplx> out, Exec exec) {
  const ConditionalCf cf(p, s.t, T, s.sigma_sq, eps);
  const long n = static_cast<long>(out.size());
  for_each_index(n, exec, [&](long j) {
    const double v = v_lo + j * dv;
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    const double ph = -static_cast<double>(j) * dv * x0;
    out[j] = w * std::exp(cf.log_value(cplx(-v, -alpha)) + cplx(0.0, ph));
  });
}

void fill_payoff_grid(double alpha, double K, const VixCoefficients& c, double v_lo, double dv,
                      std::span<cplx> out, Exec exec) {
  for_each_index(static_cast<long>(out.size()), exec,
                 [&](long j) { out[j] = payoff_kernel(v_lo + j * dv, alpha, K, c); });
}

std::vector<PriceResult> price_via_fft(const ModelParams& p, const MarketState& s, double T,
                                       std::span<const double> strikes, double alpha,
                                       const QuadratureSettings& settings, Exec exec) {
  settings.validate();
  check_integrability(p, settings.eps);
  std::vector<PriceResult> results;
  if (strikes.empty()) return results;

  VixCoefficients c{};
  for (double K : strikes) c = check_price_query(p, s, T, K, alpha);
  const double scale = std::exp(-p.r() * (T - s.t)) / kTwoPi;
  const double tol = settings.abs_tol / scale;
  const ConditionalCf cf(p, s.t, T, s.sigma_sq, settings.eps);

  // One cutoff for all strikes, so the characteristic function grid is shared.
  double V = 0.0;
  if (settings.v_max) {
    V = *settings.v_max;
  } else {
    for (double K : strikes) {
      auto integrand = [&](double v) { return g_hat_unchecked(v, alpha, K, c) * cf(cplx(-v, -alpha)); };
      double tail = 0.0;
      V = std::max(V, detail::auto_cutoff(integrand, 0.25 * tol, tail));
    }
  }
  const double dv = grid_step(p, alpha, tol);
  NodeTransform nt(grid_half(V, dv, settings.fft_size), dv, c.c_v / c.b_v);
  const long n = nt.size();

  std::vector<cplx> cf_grid(static_cast<std::size_t>(n));
  fill_cf_grid(p, s, T, alpha, settings.eps, nt.v_lo(), dv, nt.x0(), cf_grid, exec);

  for (double K : strikes) {
    auto w = nt.work();
    fill_payoff_grid(alpha, K, c, nt.v_lo(), dv, w, exec);
    for (long j = 0; j < n; ++j) w[j] *= cf_grid[j];
    const cplx fhat = nt.evaluate();
    auto integrand = [&](double v) { return g_hat_unchecked(v, alpha, K, c) * cf(cplx(-v, -alpha)); };
    results.push_back(make_result(fhat, scale, alpha, c, V, n, detail::tail_envelope(integrand, V),
                                  settings.abs_tol));
  }
  return results;
}

std::vector<PriceResult> price_via_fft_times(const ModelParams& p, const MarketState& base,
                                             std::span<const double> times, double T, double K,
                                             double alpha, const QuadratureSettings& settings,
                                             Exec exec) {
  settings.validate();
  check_integrability(p, settings.eps);
  std::vector<PriceResult> results;
  if (times.empty()) return results;

  VixCoefficients c{};
  std::vector<TimePoint> pts;
  double tol = 0.0;
  for (double t : times) {
    MarketState s = base;
    s.t = t;
    c = check_price_query(p, s, T, K, alpha);
    const double scale = std::exp(-p.r() * (T - t)) / kTwoPi;
    pts.push_back({s, scale, 0.0, 0});
    tol = tol == 0.0 ? settings.abs_tol / scale : std::min(tol, settings.abs_tol / scale);
  }

  // Common step so every grid is a slice of one master grid of the erfc factor.
  const double dv = grid_step(p, alpha, tol);
  long max_half = 0;
  for (auto& pt : pts) {
    const ConditionalCf cf(p, pt.state.t, T, pt.state.sigma_sq, settings.eps);
    auto integrand = [&](double v) { return g_hat_unchecked(v, alpha, K, c) * cf(cplx(-v, -alpha)); };
    double tail = 0.0;
    pt.cutoff = settings.v_max ? *settings.v_max
                               : detail::auto_cutoff(integrand, 0.25 * settings.abs_tol / pt.scale, tail);
    pt.half = grid_half(pt.cutoff, dv, settings.fft_size);
    max_half = std::max(max_half, pt.half);
  }
  std::vector<cplx> payoff(static_cast<std::size_t>(2 * max_half));
  fill_payoff_grid(alpha, K, c, -static_cast<double>(max_half) * dv, dv, payoff, exec);

  const double x_star = c.c_v / c.b_v;
  for (const auto& pt : pts) {
    NodeTransform nt(pt.half, dv, x_star);
    auto w = nt.work();
    fill_cf_grid(p, pt.state, T, alpha, settings.eps, nt.v_lo(), dv, nt.x0(), w, exec);
    const long offset = max_half - pt.half;
    for (long j = 0; j < nt.size(); ++j) w[j] *= payoff[offset + j];
    const cplx fhat = nt.evaluate();
    const ConditionalCf cf(p, pt.state.t, T, pt.state.sigma_sq, settings.eps);
    auto integrand = [&](double v) { return g_hat_unchecked(v, alpha, K, c) * cf(cplx(-v, -alpha)); };
    results.push_back(make_result(fhat, pt.scale, alpha, c, pt.cutoff, nt.size(),
                                  detail::tail_envelope(integrand, pt.cutoff), settings.abs_tol));
  }
  return results;
}

}  // namespace vixbns

#include "vixbns/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fftw_util.hpp"
#include "vixbns/charfn.hpp"
#include "vixbns/errors.hpp"
#include "vixbns/rng.hpp"

namespace vixbns {

namespace {

int poisson_inverse(double lambda, double u) {
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 10000) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

struct GammaPath {
  double base;   // e^{-lambda dt} sigma_t^2
  double mass;   // lambda a dt, expected jump count
  double ldt;    // lambda dt
  double inv_b;
};

void simulate_block(const GammaPath& g, std::uint64_t seed, long block, long begin, long end,
                    bool antithetic, double* out) {
  BlockStream rng(seed, static_cast<std::uint64_t>(block));
  auto jump = [&g](double u_time, double u_size) {
    return std::exp(-g.ldt * u_time) * (-std::log(u_size) * g.inv_b);
  };
  if (!antithetic) {
    for (long i = begin; i < end; ++i) {
      const int n = poisson_inverse(g.mass, rng.uniform());
      double s = g.base;
      for (int k = 0; k < n; ++k) {
        const double u1 = rng.uniform();
        s += jump(u1, rng.uniform());
      }
      out[i] = s;
    }
    return;
  }
  for (long i = begin; i < end; i += 2) {
    const double u0 = rng.uniform();
    const int na = poisson_inverse(g.mass, u0);
    const int nb = poisson_inverse(g.mass, 1.0 - u0);
    double sa = g.base, sb = g.base;
    for (int k = 0; k < std::max(na, nb); ++k) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      if (k < na) sa += jump(u1, u2);
      if (k < nb) sb += jump(1.0 - u1, 1.0 - u2);
    }
    out[i] = sa;
    out[i + 1] = sb;
  }
}

// Mean and standard error of per-path values, pairing entries when antithetic.
McEstimate summarize(const std::vector<double>& x, const SampleSet& s) {
  const long n = static_cast<long>(x.size());
  const long step = s.antithetic ? 2 : 1;
  const long m = n / step;
  double sum = 0.0;
  for (long i = 0; i < n; ++i) sum += x[i];
  const double mean = sum / n;
  double ss = 0.0;
  for (long j = 0; j < m; ++j) {
    double v = x[j * step];
    if (step == 2) v = 0.5 * (v + x[j * step + 1]);
    ss += (v - mean) * (v - mean);
  }
  McEstimate e;
  e.mean = mean;
  e.std_error = m > 1 ? std::sqrt(ss / (m - 1) / m) : 0.0;
  e.n_paths = n;
  e.seed = s.seed;
  return e;
}

}  // namespace

void McSettings::validate() const {
  if (n_paths < 1) throw DomainError("mc: n_paths must be >= 1");
  if (antithetic && n_paths % 2 != 0) throw DomainError("mc: antithetic sampling needs an even n_paths");
}

SampleSet simulate_gamma_ou_terminal(const ModelParams& p, double t, double T, double sigma_sq_t,
                                     const McSettings& mc, Exec exec) {
  mc.validate();
  if (p.variant() != Variant::GammaOU)
    throw DomainError("simulate_gamma_ou_terminal: exact simulation covers gamma-OU only");
  if (!(t >= 0.0) || !(T > t)) throw DomainError("simulate_gamma_ou_terminal: need 0 <= t < T");
  if (!(sigma_sq_t > 0.0)) throw DomainError("simulate_gamma_ou_terminal: sigma_sq_t must be > 0");

  const double dt = T - t;
  const GammaPath g{std::exp(-p.lambda() * dt) * sigma_sq_t, p.lambda() * p.a() * dt,
                    p.lambda() * dt, 1.0 / p.b()};
  SampleSet out;
  out.values.resize(static_cast<std::size_t>(mc.n_paths));
  out.antithetic = mc.antithetic;
  out.seed = mc.seed;
  const long blocks = (mc.n_paths + kPathsPerBlock - 1) / kPathsPerBlock;
  double* data = out.values.data();
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long b = 0; b < blocks; ++b)
      simulate_block(g, mc.seed, b, b * kPathsPerBlock,
                     std::min(mc.n_paths, (b + 1) * kPathsPerBlock), mc.antithetic, data);
  } else {
    for (long b = 0; b < blocks; ++b)
      simulate_block(g, mc.seed, b, b * kPathsPerBlock,
                     std::min(mc.n_paths, (b + 1) * kPathsPerBlock), mc.antithetic, data);
  }
  return out;
}

McEstimate mc_mean(const SampleSet& samples, const std::function<double(double)>& statistic) {
  if (samples.values.empty()) throw DomainError("mc: empty sample set");
  std::vector<double> x(samples.values.size());
  std::transform(samples.values.begin(), samples.values.end(), x.begin(), statistic);
  return summarize(x, samples);
}

McEstimate mc_price(const SampleSet& samples, const VixCoefficients& c, double K, double r,
                    double delta_t) {
  const double df = std::exp(-r * delta_t);
  return mc_mean(samples, [&](double s) { return df * std::max(0.0, vix_value(c, s) - K); });
}

McEstimate mc_xi(const ModelParams& p, const MarketState& s, double T, double K,
                 const McSettings& mc, quad::Tolerance outer) {
  return mc_xi(p, s, T, K, simulate_gamma_ou_terminal(p, s.t, T, s.sigma_sq, mc), outer);
}

McEstimate mc_xi(const ModelParams& p, const MarketState& s, double T, double K,
                 const SampleSet& samples, quad::Tolerance outer) {
  if (p.variant() != Variant::GammaOU) throw DomainError("mc_xi: gamma-OU only");
  s.validate();
  if (!(T > s.t)) throw DomainError("mc_xi: need t < T");
  if (samples.values.empty()) throw DomainError("mc_xi: empty sample set");
  const long n = static_cast<long>(samples.values.size());
  if (p.rho() == 0.0) return {0.0, 0.0, n, samples.seed};

  const VixCoefficients c = vix_coefficients(p);
  const double decay = std::exp(-p.lambda() * (T - s.t));
  const double la = p.lambda() * p.a();
  const double q = -p.rho() / p.b();  // e^{rho x} = u^q
  auto payoff = [&](double y) { return std::max(0.0, vix_value(c, y) - K); };
  auto shift = [&](double u) { return -std::log(u) / p.b() * decay; };  // x e^{-lambda dt}

  // Distinct sample values with multiplicities; the no-jump atom collapses to one entry.
  std::vector<double> sorted = samples.values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> value;
  std::vector<double> count;
  for (double v : sorted) {
    if (value.empty() || v != value.back()) {
      value.push_back(v);
      count.push_back(1.0);
    } else {
      count.back() += 1.0;
    }
  }
  std::vector<double> base(value.size());
  for (std::size_t k = 0; k < value.size(); ++k) base[k] = payoff(value[k]);
  const double threshold = (K * K - c.c_v) / c.b_v;  // h(y) > 0 iff y > threshold

  // Mean over samples of h(s + y) - h(s); only s > threshold - y contribute.
  auto mean_gain = [&](double y) {
    auto first = std::upper_bound(value.begin(), value.end(), threshold - y);
    double acc = 0.0;
    for (auto k = static_cast<std::size_t>(first - value.begin()); k < value.size(); ++k)
      acc += count[k] * (payoff(value[k] + y) - base[k]);
    return acc / n;
  };
  auto integrand = [&](double u) { return mean_gain(shift(u)) * (std::pow(u, q) - 1.0); };

  std::vector<double> breaks{0.0};
  for (int k = 10; k >= 1; --k) breaks.push_back(std::pow(10.0, -k));
  const double y_kink = threshold - value.front();
  if (y_kink > 0.0) breaks.push_back(std::exp(-p.b() * y_kink / decay));
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<quad::Node> rule;
  const auto res = quad::integrate<double>(integrand, std::span<const double>(breaks), outer,
                                           1 << 16, &rule);
  if (!res.converged)
    throw NumericalError("mc_xi: outer quadrature did not converge (error " + std::to_string(res.error) + ")");

  // C_rho = lambda a int_0^1 (u^q - 1)^2 du, by its own quadrature.
  const auto cr = quad::integrate<double>(
      [&](double u) { return (std::pow(u, q) - 1.0) * (std::pow(u, q) - 1.0); }, 0.0, 1.0,
      {1e-14, 1e-13});
  const double c_rho_q = la * cr.value;
  const double pref = la * std::exp(-p.r() * (T - s.t)) / (s.spot * (s.sigma_sq + c_rho_q));

  // Per-value contribution under the final rule, then per-path values for the spread.
  std::vector<double> g(value.size(), 0.0);
  for (const auto& node : rule) {
    const double y = shift(node.x);
    const double w = node.w * (std::pow(node.x, q) - 1.0);
    auto first = std::upper_bound(value.begin(), value.end(), threshold - y);
    for (auto k = static_cast<std::size_t>(first - value.begin()); k < value.size(); ++k)
      g[k] += w * (payoff(value[k] + y) - base[k]);
  }
  std::vector<double> per_path(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const auto k = std::lower_bound(value.begin(), value.end(), samples.values[i]) - value.begin();
    per_path[i] = pref * g[k];
  }
  return summarize(per_path, samples);
}

InversionResult invert_density_price(const ModelParams& p, const MarketState& s, double T,
                                     double K, const InversionSettings& settings) {
  if (p.variant() != Variant::IgOU)
    throw DomainError("invert_density_price: needs an integrable characteristic function (IG-OU)");
  s.validate();
  if (!(T > s.t)) throw DomainError("invert_density_price: need t < T");
  if (settings.grid_size < 1024 || settings.grid_size % 2 != 0)
    throw DomainError("invert_density_price: grid_size must be even and >= 1024");
  if (!(settings.y_max > 0.0)) throw DomainError("invert_density_price: y_max must be > 0");
  const VixCoefficients c = vix_coefficients(p);
  if (K != 0.0) check_strike(1.0, K, c);

  // Frequency step is fixed by y_max; the grid grows until phi has decayed at its edge.
  const double dv = 2.0 * std::numbers::pi / settings.y_max;
  const ConditionalCf cf(p, s.t, T, s.sigma_sq);
  long n = settings.grid_size;
  while (std::abs(cf(cplx(0.5 * n * dv, 0.0))) > 1e-13) {
    if (n >= (1L << 26))
      throw NumericalError("invert_density_price: characteristic function not decayed at the grid edge");
    n *= 2;
  }
  const double dy = settings.y_max / n;

  auto buf = detail::make_buffer(static_cast<std::size_t>(n));
  auto* w = reinterpret_cast<cplx*>(buf.get());
  for (long j = 0; j < n; ++j) w[j] = cf(cplx((j - n / 2) * dv, 0.0));
  fftw_execute_dft(detail::plan_cache().get(n), buf.get(), buf.get());

  // p(y_k) = (dv / 2 pi) sum_j phi(v_j) e^{-i v_j y_k} = (dv / 2 pi) (-1)^k DFT_k
  InversionResult out;
  const double scale = dv / (2.0 * std::numbers::pi);
  double pay = 0.0;
  for (long k = 0; k < n; ++k) {
    const double y = k * dy;
    const double dens = scale * w[k].real() * ((k % 2 == 0) ? 1.0 : -1.0);
    out.mass += dens * dy;
    out.mean += y * dens * dy;
    pay += std::max(0.0, vix_value(c, y) - K) * dens * dy;
  }
  out.price = std::exp(-p.r() * (T - s.t)) * pay;
  if (std::abs(out.mass - 1.0) > 1e-6)
    throw NumericalError("invert_density_price: recovered mass " + std::to_string(out.mass) +
                         " differs from 1 by more than 1e-6");
  return out;
}

}  // namespace vixbns

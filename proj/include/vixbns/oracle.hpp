#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vixbns/model.hpp"
#include "vixbns/pricing.hpp"
#include "vixbns/quadrature.hpp"

namespace vixbns {

struct McSettings {
  long n_paths = 1'000'000;
  std::uint64_t seed = 42;
  bool antithetic = false;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
  std::uint64_t seed = 0;
};

/// Draws of sigma_T^2 given sigma_t^2. With antithetic sampling, entries 2i and
/// 2i+1 are a pair and estimators average them before taking the spread.
struct SampleSet {
  std::vector<double> values;
  bool antithetic = false;
  std::uint64_t seed = 0;
};

/// Paths per RNG block. Fixed, so results do not depend on the thread count.
inline constexpr long kPathsPerBlock = 4096;

/// Exact gamma-OU transition: the background process jumps at rate lambda a
/// with Exp(b) sizes, so
///   sigma_T^2 = e^{-lambda(T-t)} sigma_t^2 + sum_i e^{-lambda(T-s_i)} x_i.
/// Throws DomainError for IG-OU.
SampleSet simulate_gamma_ou_terminal(const ModelParams& p, double t, double T, double sigma_sq_t,
                                     const McSettings& mc, Exec exec = Exec::Parallel);

/// e^{-r dt} mean of (sqrt(b_v s + c_v) - K)^+ with its standard error.
McEstimate mc_price(const SampleSet& samples, const VixCoefficients& c, double K, double r,
                    double delta_t);

/// Sample mean of a statistic of sigma_T^2, paired when the set is antithetic.
McEstimate mc_mean(const SampleSet& samples, const std::function<double(double)>& statistic);

/// Hedge ratio from the jump-sensitivity representation
///   e^{-r dt} / (S (sigma_t^2 + C_rho)) int (E[h(sigma_T^2 + x e^{-lambda dt})] - E[h(sigma_T^2)])
///                                          (e^{rho x} - 1) nu(dx),
/// h(y) = (sqrt(b_v y + c_v) - K)^+, with the same samples in both expectations.
/// The x-integral runs over u = e^{-b x}, where nu(dx) = lambda a du. Gamma-OU only.
McEstimate mc_xi(const ModelParams& p, const MarketState& s, double T, double K,
                 const McSettings& mc, quad::Tolerance outer = {1e-9, 1e-7});

/// As mc_xi, reusing an existing sample set (common random numbers across queries).
McEstimate mc_xi(const ModelParams& p, const MarketState& s, double T, double K,
                 const SampleSet& samples, quad::Tolerance outer = {1e-9, 1e-7});

struct InversionSettings {
  long grid_size = 1 << 16;  // minimum; doubled until phi decays at the frequency edge
  double y_max = 4.0;  // density grid covers [0, y_max)
};

struct InversionResult {
  double price = 0.0;
  double mass = 0.0;  // int p(y) dy over the grid
  double mean = 0.0;  // int y p(y) dy over the grid
};

/// Recovers the density of sigma_T^2 from phi on a y-grid by FFT and integrates
/// the payoff against it. Throws NumericalError if the mass misses 1 by more
/// than 1e-6. IG-OU only, where phi is integrable.
InversionResult invert_density_price(const ModelParams& p, const MarketState& s, double T,
                                     double K, const InversionSettings& settings = {});

}  // namespace vixbns

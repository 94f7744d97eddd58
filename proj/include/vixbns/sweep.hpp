#pragma once

#include <span>
#include <vector>

#include "vixbns/hedging.hpp"
#include "vixbns/pricing.hpp"

namespace vixbns {

/// One row of a time or strike sweep.
struct SweepPoint {
  double t = 0.0;
  double T = 0.0;
  double K = 0.0;
  double alpha = 0.0;
  double eps = 0.0;
  double price = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  double im_residual = 0.0;
  PriceMethod method = PriceMethod::Quadrature;
};

struct SweepOptions {
  PriceMethod method = PriceMethod::Quadrature;
  bool hedge = true;  // also compute xi and eta (always by quadrature)
  Exec exec = Exec::Parallel;
};

/// lo, lo + step, ..., up to hi inclusive. The count is rounded so that
/// floating-point drift in (hi - lo) / step neither drops nor adds the last node.
std::vector<double> axis_grid(double lo, double hi, double step);

/// Price (and hedge) one strike at several valuation times, spot and sigma_t^2
/// taken from base. Strikes below sqrt(c_v) are always in the money: the price
/// is the K = 0 value minus e^{-r(T-t)} K and xi is the K = 0 hedge.
std::vector<SweepPoint> sweep_times(const ModelParams& p, const MarketState& base,
                                    std::span<const double> times, double T, double K,
                                    double alpha, const QuadratureSettings& settings,
                                    const SweepOptions& opts = {});

/// Same at one valuation time over several strikes.
std::vector<SweepPoint> sweep_strikes(const ModelParams& p, const MarketState& s, double T,
                                      std::span<const double> strikes, double alpha,
                                      const QuadratureSettings& settings,
                                      const SweepOptions& opts = {});

}  // namespace vixbns

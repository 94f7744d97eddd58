#pragma once

// Integration of Fourier integrands over the real frequency line, shared by
// the pricing and hedging paths.

#include <algorithm>
#include <cmath>
#include <string>

#include "vixbns/errors.hpp"
#include "vixbns/pricing.hpp"
#include "vixbns/quadrature.hpp"

namespace vixbns::detail {

struct LineIntegral {
  cplx value;
  double quad_error = 0.0;
  double truncation = 0.0;  // bound on int_{|v| > V} |F|
  double v_max = 0.0;
  long evaluations = 0;
};

inline constexpr double kMinCutoff = 64.0;
inline constexpr double kMaxCutoff = 0x1p32;

/// Envelope bound on int_{|v|>V} |F(v)| dv: 2 V max |F| over [V, 2V] on both
/// sides. Exact for |F| ~ |v|^{-2}, conservative for faster decay.
template <class F>
double tail_envelope(F& f, double V) {
  double peak = 0.0;
  for (int k = 0; k <= 16; ++k) {
    const double v = V * (1.0 + k / 16.0);
    peak = std::max({peak, std::abs(f(v)), std::abs(f(-v))});
  }
  return 2.0 * 2.0 * V * peak;
}

/// Smallest cutoff kMinCutoff 2^{k/4} with tail_envelope below tol.
template <class F>
double auto_cutoff(F& f, double tol, double& tail) {
  for (int k = 0;; ++k) {
    const double V = std::ldexp(kMinCutoff, k / 4) * std::exp2((k % 4) / 4.0);
    if (V > kMaxCutoff) break;
    tail = tail_envelope(f, V);
    if (tail <= tol) return V;
  }
  throw NumericalError("frequency truncation: integrand tail still above tolerance at v = " +
                       std::to_string(kMaxCutoff));
}

/// int_{-V}^{V} F(v) dv with |error| <= tol: a quarter of tol goes to the
/// truncated tail (when V is automatic), the rest to the two half-lines.
template <class F>
LineIntegral integrate_line(F&& f, std::optional<double> v_max, double tol, int max_nodes,
                            const char* what) {
  LineIntegral out;
  if (v_max) {
    out.v_max = *v_max;
    out.truncation = tail_envelope(f, *v_max);
  } else {
    out.v_max = auto_cutoff(f, 0.25 * tol, out.truncation);
  }
  const auto breaks = quad::geometric_breaks(1.0, out.v_max);
  const quad::Tolerance half_tol{0.375 * tol, 0.0};
  auto neg = [&f](double u) { return f(-u); };
  const auto right = quad::integrate<cplx>(f, std::span<const double>(breaks), half_tol, max_nodes / 2);
  const auto left = quad::integrate<cplx>(neg, std::span<const double>(breaks), half_tol, max_nodes / 2);
  out.value = right.value + left.value;
  out.quad_error = right.error + left.error;
  out.evaluations = right.evaluations + left.evaluations;
  if (!right.converged || !left.converged)
    throw NumericalError(std::string(what) + ": quadrature did not reach tolerance (error estimate " +
                         std::to_string(out.quad_error) + ", node budget " +
                         std::to_string(max_nodes) + ")");
  return out;
}

}  // namespace vixbns::detail

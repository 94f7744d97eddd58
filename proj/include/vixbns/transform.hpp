#pragma once

#include "vixbns/model.hpp"

namespace vixbns {

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
cplx faddeeva_w(cplx z);

/// Scaled complementary error function exp(z^2) erfc(z).
cplx erfcx_complex(cplx z);

/// erfc(z) = (2/sqrt(pi)) int_z^inf exp(-t^2) dt for complex z.
cplx erfc_complex(cplx z);

/// Query for the damped Fourier transform of the VIX call payoff
///   g_hat(v, alpha; K) = int_0^inf (sqrt(b_v x + c_v) - K)^+ e^{(i v - alpha) x} dx.
/// Requires alpha > 0 and K >= sqrt(c_v); K == 0 is accepted for futures.
struct PayoffTransformQuery {
  double v = 0.0;
  double alpha = 0.0;
  double K = 0.0;
  VixCoefficients coeffs{};
};

/// Closed form
///   exp((alpha - i v) c_v / b_v) sqrt(b_v pi) / (2 (alpha - i v)^{3/2})
///     erfc(K sqrt((alpha - i v) / b_v)).
/// With K == 0 this is the transform of sqrt(b_v x + c_v) over x >= -c_v/b_v,
/// which prices the same as the payoff on x >= 0 because sigma_T^2 > 0.
cplx g_hat(const PayoffTransformQuery& q);

/// Unchecked form of g_hat used inside integrands.
cplx g_hat_unchecked(double v, double alpha, double K, const VixCoefficients& c);

/// The erfc factor f(v) = g_hat(v) exp((i v - alpha) c_v / b_v), used by the FFT route.
cplx payoff_kernel(double v, double alpha, double K, const VixCoefficients& c);

/// Throws DomainError unless alpha > 0 and (K == 0 or K >= sqrt(c_v)).
void check_strike(double alpha, double K, const VixCoefficients& c);

}  // namespace vixbns

#include "vixbns/transform.hpp"

#include <cmath>
#include <numbers>

#include "vixbns/errors.hpp"

namespace vixbns {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// w(z) for Im z >= 0. Region split and term counts follow Gautschi's scheme as
// refined by Poppe & Wijers (TOMS 680): power series near the origin, a
// continued-fraction-driven Taylor expansion in the annulus, and the Laplace
// continued fraction outside. Term counts are raised over the published ones
// to reach ~1e-14 relative accuracy.
cplx faddeeva_upper(double x, double y) {
  if (x * x + y * y > 400.0) {
    // i / (sqrt(pi) z) sum_n (2n-1)!! / (2 z^2)^n; the first omitted term is below 1e-16.
    const cplx z(x, y);
    const cplx q = 0.5 / (z * z);
    const cplx s = 1.0 + q * (1.0 + 3.0 * q * (1.0 + 5.0 * q * (1.0 + 7.0 * q * (1.0 + 9.0 * q * (1.0 + 11.0 * q)))));
    return cplx(0.0, std::numbers::inv_sqrtpi) * s / z;
  }
  const double xabs = std::abs(x);
  const double yabs = y;
  const double xs = xabs / 6.3;
  const double ys = yabs / 4.4;
  double qrho = xs * xs + ys * ys;
  const double xquad = (xabs - yabs) * (xabs + yabs);
  const double yquad = 2.0 * xabs * yabs;

  double u = 0.0, v = 0.0;
  if (qrho < 0.085264) {
    qrho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(10.0 + 80.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    const double u2 = daux * std::cos(yquad);
    const double v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0, h2 = 0.0;
    int kapn = 0, nu = 0;
    if (qrho > 1.0) {
      qrho = std::sqrt(qrho);
      nu = static_cast<int>(8.0 + 1.25 * 1442.0 / (26.0 * qrho + 77.0));
    } else {
      qrho = (1.0 - ys) * std::sqrt(1.0 - qrho);
      h = 1.88 * qrho;
      h2 = 2.0 * h;
      kapn = static_cast<int>(std::lround(9.0 + 40.0 * qrho));
      nu = static_cast<int>(std::lround(22.0 + 32.0 * qrho));
    }
    const bool taylor = h > 0.0;
    double qlambda = taylor ? std::pow(h2, kapn) : 0.0;
    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const double np1 = n + 1.0;
      double tx = yabs + h + np1 * rx;
      const double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (taylor && n <= kapn) {
        tx = qlambda + sx;
        sx = rx * tx - ry * sy;
        sy = ry * tx + rx * sy;
        qlambda /= h2;
      }
    }
    if (taylor) {
      u = kTwoOverSqrtPi * sx;
      v = kTwoOverSqrtPi * sy;
    } else {
      u = kTwoOverSqrtPi * rx;
      v = kTwoOverSqrtPi * ry;
    }
    if (yabs == 0.0) u = std::exp(-xabs * xabs);
  }
  if (x < 0.0) v = -v;
  return {u, v};
}

// exp(-z^2) with the real part of z^2 formed as (x - y)(x + y).
cplx exp_minus_square(cplx z) {
  const double x = z.real(), y = z.imag();
  const double re = -(x - y) * (x + y);
  const double im = -2.0 * x * y;
  return std::exp(re) * cplx(std::cos(im), std::sin(im));
}

}  // namespace

cplx faddeeva_w(cplx z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z.real(), z.imag());
  // w(z) = 2 exp(-z^2) - w(-z)
  return 2.0 * exp_minus_square(z) - faddeeva_upper(-z.real(), -z.imag());
}

cplx erfcx_complex(cplx z) {
  // erfcx(z) = w(i z); i z lies in the upper half plane when Re z >= 0.
  if (z.real() >= 0.0) return faddeeva_upper(-z.imag(), z.real());
  // erfc(z) = 2 - erfc(-z)  =>  erfcx(z) = 2 exp(z^2) - erfcx(-z)
  const cplx ez2 = 1.0 / exp_minus_square(z);
  return 2.0 * ez2 - faddeeva_upper(z.imag(), -z.real());
}

cplx erfc_complex(cplx z) {
  if (z.real() >= 0.0) return exp_minus_square(z) * faddeeva_upper(-z.imag(), z.real());
  const cplx mz = -z;
  return 2.0 - exp_minus_square(mz) * faddeeva_upper(-mz.imag(), mz.real());
}

void check_strike(double alpha, double K, const VixCoefficients& c) {
  if (!(alpha > 0.0)) throw DomainError("payoff transform: alpha must be > 0");
  const double floor = std::sqrt(c.c_v);
  if (K == 0.0) return;
  if (!(K >= floor * (1.0 - 1e-12)))
    throw DomainError("payoff transform: strike K must satisfy K >= sqrt(C_V) = " +
                      std::to_string(floor) + " (or K = 0 for futures)");
}

cplx payoff_kernel(double v, double alpha, double K, const VixCoefficients& c) {
  const cplx s(alpha, -v);  // -i v + alpha
  const cplx root = std::sqrt(s);
  const cplx pre = std::sqrt(c.b_v * std::numbers::pi) / (2.0 * s * root);
  if (K == 0.0) return pre;
  return pre * erfc_complex(K * root / std::sqrt(c.b_v));
}

cplx g_hat_unchecked(double v, double alpha, double K, const VixCoefficients& c) {
  const cplx s(alpha, -v);
  const cplx root = std::sqrt(s);
  const cplx pre = std::sqrt(c.b_v * std::numbers::pi) / (2.0 * s * root);
  // exp((alpha - i v) c_v / b_v) erfc(z) = exp((alpha - i v)(c_v - K^2) / b_v) erfcx(z),
  // and c_v - K^2 <= 0 keeps the exponential bounded.
  const double shift = (c.c_v - K * K) / c.b_v;
  const cplx phase = std::exp(alpha * shift) * cplx(std::cos(v * shift), -std::sin(v * shift));
  if (K == 0.0) return phase * pre;
  return phase * pre * erfcx_complex(K * root / std::sqrt(c.b_v));
}

cplx g_hat(const PayoffTransformQuery& q) {
  check_strike(q.alpha, q.K, q.coeffs);
  return g_hat_unchecked(q.v, q.alpha, q.K, q.coeffs);
}

}  // namespace vixbns

#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature for real or complex
// integrands, with QUADPACK's error heuristic.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace vixbns::quad {

struct Tolerance {
  double abs = 1e-10;
  double rel = 0.0;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

/// Node of the final composite rule: sum_j w_j f(x_j) reproduces Result::value.
struct Node {
  double x;
  double w;
};

namespace detail {

// Kronrod abscissae (odd entries are the 10-point Gauss nodes) and weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525106730, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Segment<T> gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T resk = fc * kWgk[10];
  T resg{};
  double resabs = magnitude(fc) * kWgk[10];
  std::array<T, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const T sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (magnitude(f1[j]) + magnitude(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const T mean = resk * 0.5;
  double resasc = kWgk[10] * magnitude(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));

  const double ah = std::abs(half);
  resk *= half;
  resg *= half;
  resabs *= ah;
  resasc *= ah;
  double err = magnitude(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], starting from the
/// partition given by `breaks`. Stops once the summed error estimate is below
/// max(tol.abs, tol.rel |I|) or the evaluation budget is spent.
/// If `rule` is non-null it receives the nodes and weights of the final rule.
template <class T, class F>
Result<T> integrate(F&& f, std::span<const double> breaks, Tolerance tol,
                    int max_evaluations = 1 << 20, std::vector<Node>* rule = nullptr) {
  using Seg = detail::Segment<T>;
  auto worse = [](const Seg& x, const Seg& y) { return x.error < y.error; };

  Result<T> out;
  std::vector<Seg> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] == breaks[i]) continue;
    heap.push_back(detail::gk21<T>(f, breaks[i], breaks[i + 1]));
    out.evaluations += 21;
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&heap]() {
    T v{};
    double e = 0.0;
    for (const auto& s : heap) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  int since_resum = 0;
  while (!heap.empty()) {
    if (error <= std::max(tol.abs, tol.rel * detail::magnitude(value))) {
      out.converged = true;
      break;
    }
    if (out.evaluations + 42 > max_evaluations) break;
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Seg worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in double precision.
      std::push_heap(heap.begin(), heap.end(), worse);
      break;
    }
    heap.pop_back();
    const Seg left = detail::gk21<T>(f, worst.a, mid);
    const Seg right = detail::gk21<T>(f, mid, worst.b);
    out.evaluations += 42;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (++since_resum == 64) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }

  // Deterministic final sum, ordered by position.
  std::sort(heap.begin(), heap.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
  std::tie(out.value, out.error) = totals();
  out.intervals = static_cast<int>(heap.size());
  if (!out.converged) out.converged = out.error <= std::max(tol.abs, tol.rel * detail::magnitude(out.value));

  if (rule) {
    rule->clear();
    rule->reserve(heap.size() * 21);
    for (const auto& s : heap) {
      const double c = 0.5 * (s.a + s.b), h = 0.5 * (s.b - s.a);
      rule->push_back({c, h * detail::kWgk[10]});
      for (int j = 0; j < 10; ++j) {
        rule->push_back({c - h * detail::kXgk[j], h * detail::kWgk[j]});
        rule->push_back({c + h * detail::kXgk[j], h * detail::kWgk[j]});
      }
    }
  }
  return out;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, Tolerance tol, int max_evaluations = 1 << 20,
                    std::vector<Node>* rule = nullptr) {
  const std::array<double, 2> br{a, b};
  return integrate<T>(std::forward<F>(f), std::span<const double>(br), tol, max_evaluations, rule);
}

/// Breakpoints 0, h, 2h, 4h, ... up to `upper` (inclusive), for integrands with
/// structure near the origin and a long smooth tail.
inline std::vector<double> geometric_breaks(double h, double upper) {
  std::vector<double> br{0.0};
  for (double x = h; x < upper; x *= 2.0) br.push_back(x);
  br.push_back(upper);
  return br;
}

}  // namespace vixbns::quad

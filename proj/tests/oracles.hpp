#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's quadrature, norms or scans.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

inline constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                                 0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                                   0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                                   0.2223810344533745, 0.1012285362903763};

/// ∫_lo^hi f(x) dx/x by 8-point Gauss-Legendre panels uniform in ln x.
inline double gauss_dlog(const std::function<double(double)>& f, double lo, double hi, int panels = 400) {
  const double ul = std::log(lo);
  const double h = (std::log(hi) - ul) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = ul + (i + 0.5) * h;
    for (std::size_t k = 0; k < kNodes.size(); ++k) sum += kWeights[k] * f(std::exp(mid + 0.5 * h * kNodes[k]));
  }
  return 0.5 * h * sum;
}

/// ∫_lo^hi f(x) dx, same panels.
inline double gauss_dx(const std::function<double(double)>& f, double lo, double hi, int panels = 400) {
  return gauss_dlog([&](double x) { return x * f(x); }, lo, hi, panels);
}

/// Root of an increasing or decreasing f on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  const bool up = f(hi) > f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == up) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

/// sup_{i <= j} v_j / v_i over all pairs.
inline double almost_decreasing_brute(std::span<const double> v) {
  double best = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i; j < v.size(); ++j) best = std::max(best, v[j] / v[i]);
  }
  return best;
}

enum class Order { up, down, both, neither };

/// Order of samples taken at n log-spaced points of (lo, hi).
inline Order scan_order(const std::function<double(double)>& p, double lo, double hi, int n = 10000) {
  bool up = true;
  bool down = true;
  double prev = p(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    const double v = p(std::min(x, std::nextafter(hi, 0.0)));
    if (v < prev) up = false;
    if (v > prev) down = false;
    prev = v;
  }
  if (up && down) return Order::both;
  if (up) return Order::up;
  if (down) return Order::down;
  return Order::neither;
}

/// A step function c_i x^{-b_i} on [edges[i], edges[i+1]), edges[0] = 0,
/// edges.back() = 1, with its exact p-th power integral for constant p.
struct PiecewisePower {
  std::vector<double> edges;
  std::vector<double> coef;
  std::vector<double> beta;

  double operator()(double x) const {
    const auto it = std::upper_bound(edges.begin() + 1, edges.end() - 1, x);
    const auto i = static_cast<std::size_t>(it - edges.begin() - 1);
    return coef[i] * std::pow(x, -beta[i]);
  }

  double power_integral(double p) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
      const double e = 1.0 - beta[i] * p;
      const double lo = edges[i];
      const double hi = edges[i + 1];
      const double piece = (std::abs(e) < 1e-14) ? std::log(hi / lo)
                                                  : (std::pow(hi, e) - (lo == 0.0 ? 0.0 : std::pow(lo, e))) / e;
      sum += std::pow(coef[i], p) * piece;
    }
    return sum;
  }
};

}  // namespace oracle

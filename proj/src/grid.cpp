#include "hardyvx/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hardyvx/error.hpp"

namespace hardyvx {

namespace {

// expm1(d)/d, continuous at d = 0.
double expm1_ratio(double d) {
  if (d == 0.0) return 1.0;
  return std::expm1(d) / d;
}

// ((h-1)e^h + 1)/h, the weight of the slope term in the dx cell integral of
// a linear-in-ln x interpolant. Series below 0.1 to avoid cancellation.
double slope_weight(double h) {
  if (h < 0.1) {
    double term = h;  // h^{n-1} for n = 2
    double fact = 2.0;  // n!
    double sum = 0.0;
    for (int n = 2; n <= 14; ++n) {
      sum += term * static_cast<double>(n - 1) / fact;
      term *= h;
      fact *= static_cast<double>(n + 1);
    }
    return sum;
  }
  return ((h - 1.0) * std::exp(h) + 1.0) / h;
}

// ∫ of exp-linear y over a cell of width h given endpoint values y0, y1 > 0.
double log_mean_cell(double h, double y0, double y1, double d) {
  if (std::abs(d) < 1.0) return h * y0 * expm1_ratio(d);
  return h * (y1 - y0) / d;
}

}  // namespace

// ---------------------------------------------------------------------------
// LogGrid

LogGrid::LogGrid(double x_min, std::size_t n) : x_min_(x_min) {
  if (!(x_min > 0.0 && x_min < 1.0)) {
    throw ParameterError("log grid: x_min must lie in (0,1), got " + std::to_string(x_min));
  }
  if (n < kMinPoints) {
    throw ParameterError("log grid: need at least 16 points, got " + std::to_string(n));
  }
  const double log_min = std::log(x_min);
  step_ = -log_min / static_cast<double>(n - 1);
  points_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = 1.0 - static_cast<double>(i) / static_cast<double>(n - 1);
    points_[i] = std::exp(log_min * frac);
  }
  points_.front() = x_min;
  points_.back() = 1.0;
}

LogGrid make_log_grid(double x_min, std::size_t n) { return LogGrid(x_min, n); }

// ---------------------------------------------------------------------------
// Knots

Knots::Knots(const LogGrid& grid, std::span<const double> breakpoints) : grid_(grid) {
  const double top = std::nextafter(1.0, 0.0);
  x_.assign(grid.points().begin(), grid.points().end());
  x_.back() = top;
  for (double b : breakpoints) {
    if (!(b > grid.x_min() && b < top)) continue;
    x_.push_back(b);
    const double left = std::nextafter(b, 0.0);
    if (left >= grid.x_min()) x_.push_back(left);
  }
  std::sort(x_.begin(), x_.end());
  x_.erase(std::unique(x_.begin(), x_.end()), x_.end());
  u_.resize(x_.size());
  std::transform(x_.begin(), x_.end(), u_.begin(), [](double x) { return std::log(x); });
}

std::size_t Knots::cell_right(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - x_.begin());
  k = (k == 0) ? 0 : k - 1;
  return std::min(k, x_.size() - 2);
}

std::size_t Knots::cell_left(double x) const {
  auto it = std::lower_bound(x_.begin(), x_.end(), x);
  std::size_t k = static_cast<std::size_t>(it - x_.begin());
  k = (k == 0) ? 0 : k - 1;
  return std::min(k, x_.size() - 2);
}

std::size_t Knots::first_at_or_above(double x) const {
  return static_cast<std::size_t>(std::lower_bound(x_.begin(), x_.end(), x) - x_.begin());
}

KnotsPtr make_knots(const LogGrid& grid, std::span<const double> breakpoints) {
  return std::make_shared<const Knots>(grid, breakpoints);
}

// ---------------------------------------------------------------------------
// SampledFunction

SampledFunction::SampledFunction(KnotsPtr knots, std::vector<double> values, Interp interp)
    : knots_(std::move(knots)), values_(std::move(values)), interp_(interp) {
  if (!knots_ || values_.size() != knots_->size()) {
    throw ParameterError("sampled function: value count does not match knot count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("sampled function: non-finite value");
  }
}

SampledFunction SampledFunction::sample(KnotsPtr knots, const std::function<double(double)>& fn,
                                        Interp interp) {
  std::vector<double> values(knots->size());
  auto x = knots->x();
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = fn(x[k]);
  return SampledFunction(std::move(knots), std::move(values), interp);
}

double SampledFunction::value_in_cell(std::size_t k, double u) const {
  auto us = knots_->u();
  const double h = us[k + 1] - us[k];
  const double g0 = values_[k];
  const double g1 = values_[k + 1];
  if (h <= 0.0) return g0;
  const double s = std::clamp((u - us[k]) / h, 0.0, 1.0);
  if (s == 0.0) return g0;
  if (s == 1.0) return g1;
  if (interp_ == Interp::power_law && g0 > 0.0 && g1 > 0.0) {
    return g0 * std::exp(s * std::log(g1 / g0));
  }
  return g0 + (g1 - g0) * s;
}

double SampledFunction::operator()(double x) const {
  const std::size_t k = knots_->cell_right(x);
  return value_in_cell(k, std::log(x));
}

double SampledFunction::left_value(double x) const {
  auto xs = knots_->x();
  const std::size_t idx = knots_->first_at_or_above(x);
  if (idx < xs.size() && xs[idx] == x) {
    if (idx > 0 && xs[idx - 1] == std::nextafter(x, 0.0)) return values_[idx - 1];
    return values_[idx];
  }
  const std::size_t k = knots_->cell_left(x);
  return value_in_cell(k, std::log(x));
}

// ---------------------------------------------------------------------------
// Quadrature

namespace detail {

double cell_dlog(double u0, double u1, double g0, double g1, Interp interp) {
  const double h = u1 - u0;
  if (h <= 0.0) return 0.0;
  if (interp == Interp::power_law && g0 > 0.0 && g1 > 0.0) {
    return log_mean_cell(h, g0, g1, std::log(g1 / g0));
  }
  return 0.5 * h * (g0 + g1);
}

double cell_dx(double u0, double u1, double g0, double g1, Interp interp) {
  const double h = u1 - u0;
  if (h <= 0.0) return 0.0;
  const double a = std::exp(u0);
  if (interp == Interp::power_law && g0 > 0.0 && g1 > 0.0) {
    const double y0 = a * g0;
    const double y1 = std::exp(u1) * g1;
    return log_mean_cell(h, y0, y1, h + std::log(g1 / g0));
  }
  return g0 * a * std::expm1(h) + (g1 - g0) * a * slope_weight(h);
}

}  // namespace detail

namespace {

template <class Cell>
double integrate_cells(const SampledFunction& g, double a, double b, Cell cell) {
  const Knots& kn = g.knots();
  if (b > kn.x_max()) b = kn.x_max();
  if (a < kn.x_min()) {
    // Rounding of a = x_min computed elsewhere is tolerated.
    if (a < kn.x_min() * (1.0 - 1e-12)) {
      throw DomainError("integrate: lower limit " + std::to_string(a) + " lies below the grid");
    }
    a = kn.x_min();
  }
  if (!(a < b)) return 0.0;

  auto u = kn.u();
  auto v = g.values();
  const Interp interp = g.interp();
  const std::size_t ka = kn.cell_right(a);
  const std::size_t kb = kn.cell_left(b);
  const double ua = std::log(a);
  const double ub = std::log(b);
  const double va = g(a);
  const double vb = (b == kn.x()[kb + 1]) ? v[kb + 1] : g(b);

  if (ka >= kb) return cell(ua, ub, va, vb, interp);
  double sum = cell(ua, u[ka + 1], va, v[ka + 1], interp);
  for (std::size_t k = ka + 1; k < kb; ++k) sum += cell(u[k], u[k + 1], v[k], v[k + 1], interp);
  sum += cell(u[kb], ub, v[kb], vb, interp);
  return sum;
}

}  // namespace

double integrate_dlog(const SampledFunction& g, double a, double b) {
  if (a > b) throw DomainError("integrate_dlog: empty interval");
  if (b > 1.0) throw DomainError("integrate_dlog: upper limit beyond 1");
  return integrate_cells(g, a, b, detail::cell_dlog);
}

HeadFit fit_head(const SampledFunction& g) {
  auto u = g.knots().u();
  auto v = g.values();
  std::size_t k1 = 1;
  while (k1 < u.size() && u[k1] <= u[0]) ++k1;
  if (v[0] <= 0.0) return {0.0, 0.0};
  if (k1 >= u.size() || v[k1] <= 0.0) return {v[0], 0.0};
  return {v[0], std::log(v[k1] / v[0]) / (u[k1] - u[0])};
}

double head_integral(const SampledFunction& g) {
  const HeadFit fit = fit_head(g);
  if (fit.coefficient == 0.0) return 0.0;
  if (fit.exponent <= -1.0) {
    throw DivergentHeadError("head extrapolation x^" + std::to_string(fit.exponent) +
                             " is not integrable at 0");
  }
  return fit.coefficient * g.knots().x_min() / (fit.exponent + 1.0);
}

double integrate(const SampledFunction& g, double a, double b) {
  if (a > b) throw DomainError("integrate: empty interval");
  if (b > 1.0) throw DomainError("integrate: upper limit beyond 1");
  if (a == 0.0) return head_integral(g) + integrate_cells(g, g.knots().x_min(), b, detail::cell_dx);
  return integrate_cells(g, a, b, detail::cell_dx);
}

SampledFunction cumulative_integral(const SampledFunction& g) {
  auto u = g.knots().u();
  auto v = g.values();
  for (double value : v) {
    if (value < 0.0) throw ParameterError("cumulative_integral: integrand must be nonnegative");
  }
  std::vector<double> out(v.size());
  out[0] = head_integral(g);
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    out[k + 1] = out[k] + detail::cell_dx(u[k], u[k + 1], v[k], v[k + 1], g.interp());
  }
  return SampledFunction(g.knots_ptr(), std::move(out), Interp::power_law);
}

}  // namespace hardyvx

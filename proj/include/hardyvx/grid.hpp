#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hardyvx {

/// An integration range inside (0,1]. `lo == 0` means "from the origin": the
/// part below x_min is covered by the power-law head extrapolation.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Geometric grid x_i = x_min^{1 - i/(n-1)}, uniform in ln x, from x_min to 1.
class LogGrid {
 public:
  static constexpr std::size_t kMinPoints = 16;

  LogGrid(double x_min, std::size_t n);

  double x_min() const { return x_min_; }
  std::size_t size() const { return points_.size(); }
  /// Spacing in ln x.
  double step() const { return step_; }
  std::span<const double> points() const { return points_; }
  double operator[](std::size_t i) const { return points_[i]; }

 private:
  double x_min_;
  double step_;
  std::vector<double> points_;
};

LogGrid make_log_grid(double x_min, std::size_t n);

/// Abscissae a sampled function is stored on: the grid points plus a
/// (left, right) knot pair at every requested breakpoint. The left knot sits
/// one ulp below the breakpoint, so a jump becomes a cell of negligible width
/// and every other cell is smooth. The top knot is nextafter(1, 0).
class Knots {
 public:
  explicit Knots(const LogGrid& grid, std::span<const double> breakpoints = {});

  std::size_t size() const { return x_.size(); }
  std::span<const double> x() const { return x_; }
  /// ln x of every knot.
  std::span<const double> u() const { return u_; }
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const LogGrid& grid() const { return grid_; }

  /// Index k of the cell [x_k, x_{k+1}] holding x, right-continuous at
  /// duplicated knots. Requires x_min <= x <= x_max.
  std::size_t cell_right(double x) const;
  /// Cell holding x approached from the left.
  std::size_t cell_left(double x) const;
  /// Index of the first knot with x_k >= x.
  std::size_t first_at_or_above(double x) const;

 private:
  LogGrid grid_;
  std::vector<double> x_;
  std::vector<double> u_;
};

using KnotsPtr = std::shared_ptr<const Knots>;

KnotsPtr make_knots(const LogGrid& grid, std::span<const double> breakpoints = {});

/// How values are joined between knots.
enum class Interp {
  /// Linear in ln x.
  log_linear,
  /// Linear in ln x for ln value; a cell with a zero endpoint falls back to
  /// log_linear.
  power_law,
};

/// A function known on a knot set, extended between knots by `interp` and
/// below x_min by the power law through the first two knots.
class SampledFunction {
 public:
  SampledFunction(KnotsPtr knots, std::vector<double> values, Interp interp);

  static SampledFunction sample(KnotsPtr knots, const std::function<double(double)>& fn,
                                Interp interp);

  const Knots& knots() const { return *knots_; }
  const KnotsPtr& knots_ptr() const { return knots_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const { return values_.size(); }
  Interp interp() const { return interp_; }

  /// Interpolant at x in [x_min, x_max], right-continuous at jumps.
  double operator()(double x) const;
  /// Interpolant approached from the left.
  double left_value(double x) const;

 private:
  double value_in_cell(std::size_t k, double u) const;

  KnotsPtr knots_;
  std::vector<double> values_;
  Interp interp_;
};

/// Power-law fit g(x) ~ g(x_min) (x/x_min)^exponent below the grid.
struct HeadFit {
  double coefficient = 0.0;  // g(x_min)
  double exponent = 0.0;
};

HeadFit fit_head(const SampledFunction& g);

/// ∫_a^b g(x) dx/x of the interpolant, x_min <= a < b <= 1.
double integrate_dlog(const SampledFunction& g, double a, double b);

/// ∫_a^b g(x) dx of the interpolant. With a == 0 the head ∫_0^{x_min} is
/// added from the power-law fit.
double integrate(const SampledFunction& g, double a, double b);

/// ∫_0^{x_min} g dx from the head fit. Throws DivergentHeadError when the
/// fitted exponent is <= -1.
double head_integral(const SampledFunction& g);

/// x ↦ ∫_0^x g(t) dt at every knot. Requires g >= 0.
SampledFunction cumulative_integral(const SampledFunction& g);

namespace detail {

// Exact integrals of the interpolant over one cell [u0,u1] in ln x.
double cell_dlog(double u0, double u1, double g0, double g1, Interp interp);
double cell_dx(double u0, double u1, double g0, double g1, Interp interp);

}  // namespace detail

}  // namespace hardyvx

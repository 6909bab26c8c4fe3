#pragma once

#include <span>

#include "hardyvx/exponent.hpp"
#include "hardyvx/grid.hpp"

namespace hardyvx {

/// Knot set for functions paired with p: the grid, a knot pair at every jump
/// of p, and any extra breakpoints.
KnotsPtr exponent_knots(const ExponentFunction& p, const LogGrid& grid,
                        std::span<const double> extra = {});

struct ModularValue {
  double value = 0.0;  // +inf when the integrand overflows or the head diverges
  bool infinite = false;
  /// Contribution of the power-law head below x_min (0 unless lo == 0).
  double truncation_bias = 0.0;
};

struct NormValue {
  double value = 0.0;  // upper end of the final bracket
  double tol = 0.0;    // relative bracket width reached
  double lo = 0.0;
  double hi = 0.0;
  double truncation_bias = 0.0;  // head share of I(f/value)
};

constexpr double kDefaultNormTol = 1e-10;

/// I(f) = ∫ |f(x)|^{p(x)} dx over the interval. f must be sampled on knots
/// that carry the jumps of p.
ModularValue modular(const SampledFunction& f, const ExponentFunction& p, Interval interval = {});

/// inf{λ > 0 : I(f/λ) <= 1} by bisection in ln λ.
NormValue luxemburg_norm(const SampledFunction& f, const ExponentFunction& p, Interval interval = {},
                         double tol = kDefaultNormTol);

struct BracketReport {
  double norm = 0.0;
  double modular = 0.0;
  double p_minus = 1.0;
  double p_plus = 1.0;
  double lower = 0.0;  // ‖f‖^{p+} or ‖f‖^{p-}, whichever side applies
  double upper = 0.0;
  /// min(I - lower, upper - I) / I; negative means the chain broke.
  double slack = 0.0;
  bool pass = false;
};

/// Checks the modular-norm chains ‖f‖^{p+} <= I <= ‖f‖^{p-} (norm <= 1) and
/// ‖f‖^{p-} <= I <= ‖f‖^{p+} (norm >= 1).
BracketReport bracket_check(const SampledFunction& f, const ExponentFunction& p, Interval interval = {},
                            double tol = kDefaultNormTol);

/// ‖x^{-1}‖ on (a, δ).
NormValue norm_of_inverse_x(const ExponentFunction& p, const LogGrid& grid, double a, double delta,
                            double tol = kDefaultNormTol);
NormValue norm_of_inverse_x(const ExponentFunction& p, const KnotsPtr& knots, double a, double delta,
                            double tol = kDefaultNormTol);

}  // namespace hardyvx

#pragma once

#include <span>
#include <string>
#include <vector>

#include "hardyvx/exponent.hpp"
#include "hardyvx/grid.hpp"
#include "hardyvx/lpnorm.hpp"

namespace hardyvx {

enum class VerdictClass { bounded, divergent, inconclusive };

const char* to_string(VerdictClass c);

struct SeriesPoint {
  double param = 0.0;  // a, or the left end x of a dyadic block
  double level = 0.0;  // j = log2(1/param)
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct VerdictRule {
  double plateau = 0.10;  // bounded: max - min <= plateau * max over the tail
  double growth = 1.15;   // divergent: strictly increasing tail with max/min above this
};

struct BoundednessVerdict {
  VerdictClass cls = VerdictClass::inconclusive;
  double sup_value = 0.0;
  std::string param_name = "a";
  std::vector<SeriesPoint> series;  // ordered by level
  /// Least-squares slope of the running sup against level over the tail.
  double trend_slope = 0.0;
};

/// Classifies the running sup of a series over its last third (at least 3
/// points). Any +inf value is divergent; a nonpositive tail is bounded.
BoundednessVerdict classify_series(std::vector<SeriesPoint> series, std::string param_name,
                                   VerdictRule rule = {});

/// a = 2^-j for j = 1, 2, ... with x_min < a < delta; at most max_level levels
/// when max_level > 0.
std::vector<double> dyadic_a_list(const LogGrid& grid, double delta, int max_level = 0);

/// Deepest j with 2^-j > x_min.
int dyadic_depth(const LogGrid& grid);

/// Grid points below 1 together with both sides of every jump of p, of its
/// halves and of its doubles.
std::vector<double> scan_points(const ExponentFunction& p, const LogGrid& grid);

/// Block maxima of |p(x) - p(0)| ln(1/x) over [2^-j, 2^{1-j}).
BoundednessVerdict condition_A(const ExponentFunction& p, const LogGrid& grid);

struct ConditionB {
  BoundednessVerdict verdict;
  double limsup = 0.0;     // max of the raw block values over the tail
  double threshold = 0.0;  // p(0)(p(0) - 1)
  double margin = 0.0;     // threshold - limsup; positive means the sufficient condition holds
};

/// Block maxima of [p(x) - p(x/2)] ln(1/x).
ConditionB condition_B(const ExponentFunction& p, const LogGrid& grid);

/// r(a) = ∫_a^δ φ(x) dx/x / φ(a).
BoundednessVerdict criterion_C2(const ExponentFunction& p, const LogGrid& grid,
                                const std::vector<double>& a_list, double delta = 1.0);

/// sup_{i <= j} v_j / v_i in one reverse sweep.
double almost_decreasing_constant(std::span<const double> v);
double almost_decreasing_constant(const SampledFunction& v);

/// 2^-k (1 - 1/p+) for k = 0..depth; the scale falls back to 1 when p+ = 1.
std::vector<double> default_epsilons(const ExponentFunction& p, const LogGrid& grid, int depth = 12,
                                     double delta = 1.0);

struct C3Result {
  double best_epsilon = 0.0;
  double constant = 0.0;  // C(best_epsilon) at the deepest level
  /// K_j = min over ε of C_j(ε)/ε, C_j the almost-decreasing constant of
  /// t^ε φ(t) on [2^-j, δ).
  BoundednessVerdict verdict;
  /// Almost-decreasing constant of φ itself on [2^-j, δ).
  BoundednessVerdict phi_almost_decreasing;
};

C3Result criterion_C3(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& epsilons,
                      const std::vector<double>& a_list, double delta = 1.0);

/// s(a) = ∫_a^δ (a^{1/p'(a)} x^{-1/p'(x)})^{p(x)} dx/x, assembled in log space.
BoundednessVerdict criterion_C4(const ExponentFunction& p, const LogGrid& grid,
                                const std::vector<double>& a_list, double delta = 1.0);

/// ‖x^{-1}‖_{(a,δ)} / φ(a), with the norm bracket carried into lo/hi.
BoundednessVerdict criterion_C5(const ExponentFunction& p, const LogGrid& grid,
                                const std::vector<double>& a_list, double delta = 1.0,
                                double tol = kDefaultNormTol);

struct Oscillation {
  double sup = 0.0;
  BoundednessVerdict verdict;
};

/// Block maxima of |1/p'(2x) - 1/p'(x)| ln(1/x), x < 1/2.
Oscillation dyadic_oscillation(const ExponentFunction& p, const LogGrid& grid);

struct Doubling {
  double value = 1.0;  // sup of φ(y)/φ(x), x/2 <= y <= 2x, x < 1/4
  BoundednessVerdict verdict;
};

Doubling phi_doubling(const ExponentFunction& p, const LogGrid& grid);

}  // namespace hardyvx

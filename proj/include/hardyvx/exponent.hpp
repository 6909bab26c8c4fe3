#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hardyvx/grid.hpp"

namespace hardyvx {

// Exponent families. Every family is bounded above; construction through
// ExponentFunction rejects parameters with p < 1 anywhere.

struct Constant {
  double p0 = 2.0;
};

enum class Sign { plus, minus };

/// p(x) = p0 ± c / eta^alpha with eta = max(ln(1/x), 1).
struct LogPerturbed {
  double p0 = 2.0;
  double c = 1.0;
  double alpha = 1.0;
  Sign sign = Sign::plus;
};

/// p(x) = p0 + c lnln(1/x)/ln(1/x) below e^{-e}, held at p0 + c/e above.
struct LogLogPerturbed {
  double p0 = 2.0;
  double c = 1.0;
};

/// values[i] on [breakpoints[i-1], breakpoints[i]), right-continuous;
/// values.size() == breakpoints.size() + 1.
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

/// Linear in x through (breakpoints[i], values[i]), constant outside.
struct PiecewiseLinear {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

struct Jump {
  double x = 0.5;
  double height = 0.0;
};

/// p(x) = p0 + Σ_{x_k <= x} height_k, scales x_k strictly decreasing.
struct DyadicJump {
  double p0 = 1.5;
  std::vector<Jump> jumps;
};

/// Samples (x_i, p_i), x increasing, joined linearly in (ln x, p) and held
/// constant outside the sampled range.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> p;
};

using ExponentFamily = std::variant<Constant, LogPerturbed, LogLogPerturbed, PiecewiseConstant,
                                    PiecewiseLinear, DyadicJump, Tabulated>;

enum class Monotonicity { nonincreasing, nondecreasing, nonmonotone };

struct MonotonicityClass {
  Monotonicity cls = Monotonicity::nonmonotone;
  /// Order certified on (0, certified_on).
  double certified_on = 1.0;
  /// Both orders hold; reported as nondecreasing.
  bool constant = false;
  /// Derived from samples rather than family parameters.
  bool grid_certified = false;
};

struct ExponentBounds {
  double p_minus = 1.0;
  double p_plus = 1.0;
  bool approximate = false;
};

struct OriginLimit {
  double value = 1.0;
  bool approximate = false;
};

/// An exponent p:(0,1) -> [1, p+] with its monotonicity metadata.
/// Immutable after construction.
class ExponentFunction {
 public:
  explicit ExponentFunction(ExponentFamily family, std::string id = {});

  const ExponentFamily& family() const { return family_; }
  const std::string& id() const { return id_; }
  std::string family_name() const;

  /// p(x) for x in (0,1); throws DomainError otherwise.
  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// 1/p'(x) = 1 - 1/p(x), zero exactly when p(x) = 1.
  double conjugate_reciprocal(double x) const;

  /// ln φ(t) = (1 - 1/p(t)) ln(1/t).
  double log_phi(double t) const;
  /// φ(t) = t^{-1/p'(t)}, assembled in log space.
  double phi(double t) const;

  /// p- and p+ over (a,b). Exact for symbolic families; grid-based and
  /// flagged for Tabulated.
  ExponentBounds bounds(Interval interval, const LogGrid& grid) const;

  /// Order of p on (0, eps), eps in (0,1].
  MonotonicityClass classify_monotonicity(double eps) const;

  OriginLimit limit_at_origin() const;

  /// Points in (0,1) where p jumps (right-continuous convention).
  std::vector<double> discontinuities() const;

 private:
  double eval_unchecked(double x) const;

  ExponentFamily family_;
  std::string id_;
};

const char* to_string(Monotonicity m);

}  // namespace hardyvx

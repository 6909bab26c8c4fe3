#include "hardyvx/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hardyvx/error.hpp"

namespace hardyvx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const double kTop = std::nextafter(1.0, 0.0);

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

void require_exponent(double p, const std::string& where) {
  require(std::isfinite(p), where + ": exponent value must be finite");
  require(p >= 1.0, where + ": exponent value " + std::to_string(p) + " < 1");
}

void require_increasing_in_unit(const std::vector<double>& xs, const std::string& where) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(xs[i] > 0.0 && xs[i] < 1.0, where + ": breakpoints must lie in (0,1)");
    if (i > 0) require(xs[i] > xs[i - 1], where + ": breakpoints must be strictly increasing");
  }
}

struct SequenceOrder {
  Monotonicity cls;
  bool constant;
};

SequenceOrder order_of(const std::vector<double>& seq) {
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] < seq[i - 1]) up = false;
    if (seq[i] > seq[i - 1]) down = false;
  }
  if (up && down) return {Monotonicity::nondecreasing, true};
  if (up) return {Monotonicity::nondecreasing, false};
  if (down) return {Monotonicity::nonincreasing, false};
  return {Monotonicity::nonmonotone, false};
}

SequenceOrder order_of_scalar(double c, bool increasing_when_positive) {
  if (c == 0.0) return {Monotonicity::nondecreasing, true};
  const bool up = (c > 0.0) == increasing_when_positive;
  return {up ? Monotonicity::nondecreasing : Monotonicity::nonincreasing, false};
}

void validate(const ExponentFamily& family) {
  std::visit(
      overloaded{
          [](const Constant& f) { require_exponent(f.p0, "constant"); },
          [](const LogPerturbed& f) {
            require(std::isfinite(f.c) && f.c >= 0.0, "log-perturbed: c must be >= 0");
            require(std::isfinite(f.alpha) && f.alpha > 0.0, "log-perturbed: alpha must be > 0");
            require_exponent(f.p0, "log-perturbed p0");
            if (f.sign == Sign::minus) require_exponent(f.p0 - f.c, "log-perturbed p0 - c");
          },
          [](const LogLogPerturbed& f) {
            require(std::isfinite(f.c), "loglog-perturbed: c must be finite");
            require_exponent(f.p0, "loglog-perturbed p0");
            require_exponent(f.p0 + std::min(f.c, 0.0) / std::numbers::e, "loglog-perturbed p0 + c/e");
          },
          [](const PiecewiseConstant& f) {
            require_increasing_in_unit(f.breakpoints, "piecewise-constant");
            require(f.values.size() == f.breakpoints.size() + 1,
                    "piecewise-constant: need one more value than breakpoints");
            for (double v : f.values) require_exponent(v, "piecewise-constant");
          },
          [](const PiecewiseLinear& f) {
            require(!f.breakpoints.empty(), "piecewise-linear: need at least one breakpoint");
            require_increasing_in_unit(f.breakpoints, "piecewise-linear");
            require(f.values.size() == f.breakpoints.size(),
                    "piecewise-linear: need one value per breakpoint");
            for (double v : f.values) require_exponent(v, "piecewise-linear");
          },
          [](const DyadicJump& f) {
            require_exponent(f.p0, "dyadic-jump p0");
            double level = f.p0;
            for (std::size_t k = f.jumps.size(); k-- > 0;) {
              const Jump& j = f.jumps[k];
              require(j.x > 0.0 && j.x < 1.0, "dyadic-jump: scales must lie in (0,1)");
              require(std::isfinite(j.height), "dyadic-jump: heights must be finite");
              if (k + 1 < f.jumps.size()) {
                require(j.x > f.jumps[k + 1].x, "dyadic-jump: scales must be strictly decreasing");
              }
              level += j.height;
              require_exponent(level, "dyadic-jump partial sum");
            }
          },
          [](const Tabulated& f) {
            require(f.x.size() >= 2 && f.x.size() == f.p.size(),
                    "tabulated: need at least two (x, p) samples of equal length");
            require_increasing_in_unit(f.x, "tabulated");
            for (double v : f.p) require_exponent(v, "tabulated");
          },
      },
      family);
}

double tabulated_eval(const Tabulated& f, double x) {
  if (x <= f.x.front()) return f.p.front();
  if (x >= f.x.back()) return f.p.back();
  const auto it = std::upper_bound(f.x.begin(), f.x.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - f.x.begin());
  const double u0 = std::log(f.x[i - 1]);
  const double u1 = std::log(f.x[i]);
  const double s = (std::log(x) - u0) / (u1 - u0);
  return f.p[i - 1] + s * (f.p[i] - f.p[i - 1]);
}

}  // namespace

const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::nonincreasing:
      return "nonincreasing";
    case Monotonicity::nondecreasing:
      return "nondecreasing";
    case Monotonicity::nonmonotone:
      return "nonmonotone";
  }
  return "nonmonotone";
}

ExponentFunction::ExponentFunction(ExponentFamily family, std::string id)
    : family_(std::move(family)), id_(std::move(id)) {
  validate(family_);
  if (id_.empty()) id_ = family_name();
}

std::string ExponentFunction::family_name() const {
  return std::visit(overloaded{
                        [](const Constant&) { return "constant"; },
                        [](const LogPerturbed&) { return "log-perturbed"; },
                        [](const LogLogPerturbed&) { return "loglog-perturbed"; },
                        [](const PiecewiseConstant&) { return "piecewise-constant"; },
                        [](const PiecewiseLinear&) { return "piecewise-linear"; },
                        [](const DyadicJump&) { return "dyadic-jump"; },
                        [](const Tabulated&) { return "tabulated"; },
                    },
                    family_);
}

double ExponentFunction::eval(double x) const {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("exponent evaluated outside (0,1) at x = " + std::to_string(x));
  }
  return eval_unchecked(x);
}

double ExponentFunction::eval_unchecked(double x) const {
  return std::visit(
      overloaded{
          [](const Constant& f) { return f.p0; },
          [x](const LogPerturbed& f) {
            const double eta = std::max(-std::log(x), 1.0);
            const double bump = f.c * std::pow(eta, -f.alpha);
            return f.sign == Sign::plus ? f.p0 + bump : f.p0 - bump;
          },
          [x](const LogLogPerturbed& f) {
            const double eta = std::max(-std::log(x), std::numbers::e);
            return f.p0 + f.c * std::log(eta) / eta;
          },
          [x](const PiecewiseConstant& f) {
            const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), x);
            return f.values[static_cast<std::size_t>(it - f.breakpoints.begin())];
          },
          [x](const PiecewiseLinear& f) {
            if (x <= f.breakpoints.front()) return f.values.front();
            if (x >= f.breakpoints.back()) return f.values.back();
            const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - f.breakpoints.begin());
            const double s = (x - f.breakpoints[i - 1]) / (f.breakpoints[i] - f.breakpoints[i - 1]);
            return f.values[i - 1] + s * (f.values[i] - f.values[i - 1]);
          },
          [x](const DyadicJump& f) {
            double p = f.p0;
            for (const Jump& j : f.jumps) {
              if (j.x <= x) p += j.height;
            }
            return p;
          },
          [x](const Tabulated& f) { return tabulated_eval(f, x); },
      },
      family_);
}

double ExponentFunction::conjugate_reciprocal(double x) const {
  const double p = eval(x);
  return p == 1.0 ? 0.0 : 1.0 - 1.0 / p;
}

double ExponentFunction::log_phi(double t) const { return -conjugate_reciprocal(t) * std::log(t); }

double ExponentFunction::phi(double t) const {
  const double lp = log_phi(t);
  if (lp > 709.0) throw DomainError("phi overflows at t = " + std::to_string(t));
  return std::exp(lp);
}

OriginLimit ExponentFunction::limit_at_origin() const {
  return std::visit(overloaded{
                        [](const Constant& f) { return OriginLimit{f.p0, false}; },
                        [](const LogPerturbed& f) { return OriginLimit{f.p0, false}; },
                        [](const LogLogPerturbed& f) { return OriginLimit{f.p0, false}; },
                        [](const PiecewiseConstant& f) { return OriginLimit{f.values.front(), false}; },
                        [](const PiecewiseLinear& f) { return OriginLimit{f.values.front(), false}; },
                        [](const DyadicJump& f) { return OriginLimit{f.p0, false}; },
                        [](const Tabulated& f) { return OriginLimit{f.p.front(), true}; },
                    },
                    family_);
}

std::vector<double> ExponentFunction::discontinuities() const {
  std::vector<double> out;
  if (const auto* pc = std::get_if<PiecewiseConstant>(&family_)) {
    for (std::size_t i = 0; i < pc->breakpoints.size(); ++i) {
      if (pc->values[i + 1] != pc->values[i]) out.push_back(pc->breakpoints[i]);
    }
  } else if (const auto* dj = std::get_if<DyadicJump>(&family_)) {
    for (const Jump& j : dj->jumps) {
      if (j.height != 0.0) out.push_back(j.x);
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

ExponentBounds ExponentFunction::bounds(Interval interval, const LogGrid& grid) const {
  const double lo = interval.lo;
  const double hi = std::min(interval.hi, 1.0);
  if (!(lo >= 0.0 && lo < hi)) throw DomainError("bounds: interval must satisfy 0 <= a < b <= 1");

  std::vector<double> candidates;
  candidates.push_back(lo == 0.0 ? limit_at_origin().value : eval_unchecked(lo));
  candidates.push_back(eval_unchecked(std::min(std::nextafter(hi, 0.0), kTop)));

  bool approximate = false;
  auto add_interior = [&](double b) {
    if (b > lo && b < hi) {
      candidates.push_back(eval_unchecked(b));
      candidates.push_back(eval_unchecked(std::nextafter(b, 0.0)));
    }
  };
  if (const auto* pc = std::get_if<PiecewiseConstant>(&family_)) {
    for (double b : pc->breakpoints) add_interior(b);
  } else if (const auto* pl = std::get_if<PiecewiseLinear>(&family_)) {
    for (double b : pl->breakpoints) add_interior(b);
  } else if (const auto* dj = std::get_if<DyadicJump>(&family_)) {
    for (const Jump& j : dj->jumps) add_interior(j.x);
  } else if (const auto* tab = std::get_if<Tabulated>(&family_)) {
    approximate = true;
    for (double x : tab->x) add_interior(x);
    for (double x : grid.points()) {
      if (x > lo && x < hi) candidates.push_back(eval_unchecked(x));
    }
  }
  const auto [mn, mx] = std::minmax_element(candidates.begin(), candidates.end());
  return {*mn, *mx, approximate};
}

MonotonicityClass ExponentFunction::classify_monotonicity(double eps) const {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("classify_monotonicity: eps must lie in (0,1]");
  const double right = std::min(std::nextafter(eps, 0.0), kTop);

  SequenceOrder order{Monotonicity::nonmonotone, false};
  bool grid_certified = false;
  std::visit(overloaded{
                 [&](const Constant&) { order = {Monotonicity::nondecreasing, true}; },
                 [&](const LogPerturbed& f) {
                   order = order_of_scalar(f.sign == Sign::plus ? f.c : -f.c, true);
                 },
                 [&](const LogLogPerturbed& f) { order = order_of_scalar(f.c, true); },
                 [&](const PiecewiseConstant& f) {
                   std::vector<double> seq{f.values.front()};
                   for (std::size_t i = 0; i < f.breakpoints.size() && f.breakpoints[i] < eps; ++i) {
                     seq.push_back(f.values[i + 1]);
                   }
                   order = order_of(seq);
                 },
                 [&](const PiecewiseLinear& f) {
                   std::vector<double> seq{f.values.front()};
                   for (std::size_t i = 0; i < f.breakpoints.size() && f.breakpoints[i] < eps; ++i) {
                     seq.push_back(f.values[i]);
                   }
                   seq.push_back(eval_unchecked(right));
                   order = order_of(seq);
                 },
                 [&](const DyadicJump& f) {
                   std::vector<double> seq{f.p0};
                   double level = f.p0;
                   for (std::size_t k = f.jumps.size(); k-- > 0;) {
                     if (f.jumps[k].x >= eps) continue;
                     level += f.jumps[k].height;
                     seq.push_back(level);
                   }
                   order = order_of(seq);
                 },
                 [&](const Tabulated& f) {
                   std::vector<double> seq;
                   for (std::size_t i = 0; i < f.x.size() && f.x[i] < eps; ++i) seq.push_back(f.p[i]);
                   seq.push_back(eval_unchecked(right));
                   order = order_of(seq);
                   grid_certified = true;
                 },
             },
             family_);
  return {order.cls, eps, order.constant, grid_certified};
}

}  // namespace hardyvx

#include "hardyvx/lpnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hardyvx/error.hpp"

namespace hardyvx {

namespace {

constexpr double kExpLimit = 709.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

// I(f/λ) as a function of ln λ, with p and ln|f| cached per knot.
class ScaledModular {
 public:
  ScaledModular(const SampledFunction& f, const ExponentFunction& p, Interval iv)
      : knots_(f.knots_ptr()), iv_(iv) {
    const Knots& kn = *knots_;
    if (!(iv_.lo >= 0.0 && iv_.lo < iv_.hi && iv_.hi <= 1.0)) {
      throw DomainError("modular: interval must satisfy 0 <= a < b <= 1");
    }
    if (iv_.lo > 0.0 && iv_.lo < kn.x_min() * (1.0 - 1e-12)) {
      throw DomainError("modular: lower limit lies below the grid");
    }
    const double a = std::max(iv_.lo, kn.x_min());
    const double b = std::min(iv_.hi, kn.x_max());
    first_ = iv_.lo == 0.0 ? 0 : kn.cell_right(a);
    last_ = std::min(kn.cell_left(b) + 1, kn.size() - 1);

    auto x = kn.x();
    p_.assign(kn.size(), 1.0);
    logf_.assign(kn.size(), -kInf);
    for (std::size_t k = first_; k <= last_; ++k) {
      p_[k] = p.eval(x[k]);
      const double v = std::abs(f[k]);
      if (v > 0.0) {
        logf_[k] = std::log(v);
        log_sup_ = std::max(log_sup_, logf_[k]);
      }
    }
  }

  bool zero() const { return log_sup_ == -kInf; }
  double log_sup() const { return log_sup_; }

  ModularValue at(double log_lambda) const {
    std::vector<double> g(knots_->size(), 0.0);
    for (std::size_t k = first_; k <= last_; ++k) {
      if (logf_[k] == -kInf) continue;  // 0^p = 0
      const double e = p_[k] * (logf_[k] - log_lambda);
      if (e > kExpLimit) return {kInf, true, 0.0};
      g[k] = std::exp(e);
    }
    const SampledFunction integrand(knots_, std::move(g), Interp::power_law);
    ModularValue out;
    if (iv_.lo == 0.0) {
      // Below x_min f continues as a power law and p is held at p(x_min),
      // which keeps the head monotone in λ and immune to underflow.
      const double head = log_head(log_lambda);
      if (head == kInf) return {kInf, true, kInf};
      out.truncation_bias = head;
      out.value = out.truncation_bias + integrate(integrand, knots_->x_min(), iv_.hi);
    } else {
      out.value = integrate(integrand, iv_.lo, iv_.hi);
    }
    if (!std::isfinite(out.value)) return {kInf, true, out.truncation_bias};
    return out;
  }

 private:
  double log_head(double log_lambda) const {
    auto u = knots_->u();
    if (logf_[0] == -kInf) return 0.0;
    std::size_t k1 = 1;
    while (k1 < u.size() && u[k1] <= u[0]) ++k1;
    const double e0 = p_[0] * (logf_[0] - log_lambda);
    double slope = 0.0;
    if (k1 < u.size() && logf_[k1] != -kInf) slope = p_[0] * (logf_[k1] - logf_[0]) / (u[k1] - u[0]);
    if (slope <= -1.0) return kInf;
    return std::exp(e0 + u[0]) / (slope + 1.0);
  }

  KnotsPtr knots_;
  Interval iv_;
  std::size_t first_ = 0;
  std::size_t last_ = 0;
  std::vector<double> p_;
  std::vector<double> logf_;
  double log_sup_ = -kInf;
};

}  // namespace

KnotsPtr exponent_knots(const ExponentFunction& p, const LogGrid& grid, std::span<const double> extra) {
  std::vector<double> breaks = p.discontinuities();
  breaks.insert(breaks.end(), extra.begin(), extra.end());
  return make_knots(grid, breaks);
}

ModularValue modular(const SampledFunction& f, const ExponentFunction& p, Interval interval) {
  return ScaledModular(f, p, interval).at(0.0);
}

NormValue luxemburg_norm(const SampledFunction& f, const ExponentFunction& p, Interval interval,
                         double tol) {
  if (!(tol > 0.0)) throw ParameterError("luxemburg_norm: tol must be positive");
  const ScaledModular m(f, p, interval);
  if (m.zero()) return {};

  auto fits = [&](double l) {
    const ModularValue v = m.at(l);
    return !v.infinite && v.value <= 1.0;
  };
  const double span = 60.0 * std::numbers::ln2;

  double hi = std::max(0.0, m.log_sup());
  for (int guard = 0; !fits(hi); ++guard) {
    if (guard == 400) throw UnboundedNormError("luxemburg_norm: modular stays above 1 for every scale");
    hi += 2.0 * std::numbers::ln2;
  }
  double lo = hi - span;
  for (int guard = 0; fits(lo); ++guard) {
    if (guard == 30) throw UnboundedNormError("luxemburg_norm: no lower bracket found");
    hi = lo;
    lo -= span;
  }
  while (-std::expm1(lo - hi) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (fits(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  NormValue out;
  out.hi = std::exp(hi);
  out.lo = std::exp(lo);
  out.value = out.hi;
  out.tol = -std::expm1(lo - hi);
  out.truncation_bias = m.at(hi).truncation_bias;
  return out;
}

BracketReport bracket_check(const SampledFunction& f, const ExponentFunction& p, Interval interval,
                            double tol) {
  BracketReport r;
  r.norm = luxemburg_norm(f, p, interval, tol).value;
  r.modular = modular(f, p, interval).value;
  const ExponentBounds b = p.bounds(interval, f.knots().grid());
  r.p_minus = b.p_minus;
  r.p_plus = b.p_plus;
  if (r.norm <= 1.0) {
    r.lower = std::pow(r.norm, r.p_plus);
    r.upper = std::pow(r.norm, r.p_minus);
  } else {
    r.lower = std::pow(r.norm, r.p_minus);
    r.upper = std::pow(r.norm, r.p_plus);
  }
  if (r.modular > 0.0) {
    r.slack = std::min(r.modular - r.lower, r.upper - r.modular) / r.modular;
  }
  r.pass = r.slack >= -1e-9;
  return r;
}

NormValue norm_of_inverse_x(const ExponentFunction& p, const KnotsPtr& knots, double a, double delta,
                            double tol) {
  if (!(a >= knots->x_min() * (1.0 - 1e-12) && a < delta && delta <= 1.0)) {
    throw DomainError("norm_of_inverse_x: need x_min <= a < delta <= 1");
  }
  const SampledFunction inv =
      SampledFunction::sample(knots, [](double x) { return 1.0 / x; }, Interp::power_law);
  return luxemburg_norm(inv, p, {a, delta}, tol);
}

NormValue norm_of_inverse_x(const ExponentFunction& p, const LogGrid& grid, double a, double delta,
                            double tol) {
  const double edges[] = {a, delta};
  return norm_of_inverse_x(p, exponent_knots(p, grid, edges), a, delta, tol);
}

}  // namespace hardyvx

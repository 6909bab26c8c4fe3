#include "hardyvx/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardyvx/error.hpp"
#include "hardyvx/parallel.hpp"

namespace hardyvx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExpLimit = 709.0;

double level_of(double a) { return -std::log2(a); }

// Knots at every scanned a and at δ keep each integral inside its interval.
KnotsPtr scan_knots(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& a_list,
                    double delta) {
  std::vector<double> extra = a_list;
  extra.push_back(delta);
  return exponent_knots(p, grid, extra);
}

SeriesPoint point(double param, double value) { return {param, level_of(param), value, value, value}; }

// Max of quantity(x) over the scan points of each block [2^-j, 2^{1-j}).
template <class Quantity>
std::vector<SeriesPoint> block_series(const std::vector<double>& pts, int j_first, int j_last,
                                      Quantity quantity) {
  std::vector<SeriesPoint> out;
  for (int j = j_first; j <= j_last; ++j) {
    const double lo = std::ldexp(1.0, -j);
    const double hi = 2.0 * lo;
    double best = -kInf;
    for (auto it = std::lower_bound(pts.begin(), pts.end(), lo); it != pts.end() && *it < hi; ++it) {
      best = std::max(best, quantity(*it));
    }
    if (best > -kInf) out.push_back({lo, static_cast<double>(j), best, best, best});
  }
  return out;
}

std::size_t tail_size(std::size_t m) { return (m + 2) / 3; }

}  // namespace

const char* to_string(VerdictClass c) {
  switch (c) {
    case VerdictClass::bounded:
      return "bounded";
    case VerdictClass::divergent:
      return "divergent";
    case VerdictClass::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

BoundednessVerdict classify_series(std::vector<SeriesPoint> series, std::string param_name, VerdictRule rule) {
  std::stable_sort(series.begin(), series.end(),
                   [](const SeriesPoint& l, const SeriesPoint& r) { return l.level < r.level; });
  BoundednessVerdict v;
  v.param_name = std::move(param_name);
  v.series = std::move(series);
  const auto& s = v.series;
  if (s.empty()) return v;

  std::vector<double> run(s.size());
  double sup = -kInf;
  bool has_nan = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::isnan(s[i].value)) has_nan = true;
    else sup = std::max(sup, s[i].value);
    run[i] = sup;
  }
  v.sup_value = sup;

  const std::size_t t = tail_size(s.size());
  const std::size_t first = s.size() - t;
  if (t >= 2) {
    double ml = 0.0;
    double mv = 0.0;
    for (std::size_t i = first; i < s.size(); ++i) {
      ml += s[i].level;
      mv += run[i];
    }
    ml /= static_cast<double>(t);
    mv /= static_cast<double>(t);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = first; i < s.size(); ++i) {
      sxy += (s[i].level - ml) * (run[i] - mv);
      sxx += (s[i].level - ml) * (s[i].level - ml);
    }
    v.trend_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }

  if (sup == kInf) {
    v.cls = VerdictClass::divergent;
    v.trend_slope = kInf;
    return v;
  }
  if (has_nan || t < 3) return v;

  const double lo = run[first];
  const double hi = run.back();
  bool increasing = true;
  for (std::size_t i = first + 1; i < s.size(); ++i) increasing = increasing && run[i] > run[i - 1];

  if (hi <= 0.0 || hi - lo <= rule.plateau * hi) {
    v.cls = VerdictClass::bounded;
  } else if (increasing && lo > 0.0 && hi > rule.growth * lo) {
    v.cls = VerdictClass::divergent;
  }
  return v;
}

int dyadic_depth(const LogGrid& grid) {
  int j = 0;
  while (std::ldexp(1.0, -(j + 1)) > grid.x_min()) ++j;
  return j;
}

std::vector<double> dyadic_a_list(const LogGrid& grid, double delta, int max_level) {
  int top = dyadic_depth(grid);
  if (max_level > 0) top = std::min(top, max_level);
  std::vector<double> out;
  for (int j = 1; j <= top; ++j) {
    const double a = std::ldexp(1.0, -j);
    if (a < delta) out.push_back(a);
  }
  return out;
}

std::vector<double> scan_points(const ExponentFunction& p, const LogGrid& grid) {
  std::vector<double> pts;
  for (double x : grid.points()) {
    if (x < 1.0) pts.push_back(x);
  }
  for (double b : p.discontinuities()) {
    for (double c : {b, 0.5 * b, 2.0 * b}) {
      for (double x : {c, std::nextafter(c, 0.0)}) {
        if (x >= grid.x_min() && x < 1.0) pts.push_back(x);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

BoundednessVerdict condition_A(const ExponentFunction& p, const LogGrid& grid) {
  const double p0 = p.limit_at_origin().value;
  auto series = block_series(scan_points(p, grid), 1, dyadic_depth(grid),
                             [&](double x) { return std::abs(p(x) - p0) * -std::log(x); });
  return classify_series(std::move(series), "x");
}

ConditionB condition_B(const ExponentFunction& p, const LogGrid& grid) {
  auto series = block_series(scan_points(p, grid), 1, dyadic_depth(grid) - 1,
                             [&](double x) { return (p(x) - p(0.5 * x)) * -std::log(x); });
  ConditionB out;
  out.limsup = -kInf;
  for (std::size_t i = series.size() - tail_size(series.size()); i < series.size(); ++i) {
    out.limsup = std::max(out.limsup, series[i].value);
  }
  const double p0 = p.limit_at_origin().value;
  out.threshold = p0 * (p0 - 1.0);
  out.margin = out.threshold - out.limsup;
  out.verdict = classify_series(std::move(series), "x");
  return out;
}

BoundednessVerdict criterion_C2(const ExponentFunction& p, const LogGrid& grid,
                                const std::vector<double>& a_list, double delta) {
  const SampledFunction phi = SampledFunction::sample(
      scan_knots(p, grid, a_list, delta), [&](double x) { return p.phi(x); }, Interp::power_law);
  std::vector<SeriesPoint> series;
  for (double a : a_list) series.push_back(point(a, integrate_dlog(phi, a, delta) / p.phi(a)));
  return classify_series(std::move(series), "a");
}

double almost_decreasing_constant(std::span<const double> v) {
  double best = 1.0;
  double suffix_max = 0.0;
  for (std::size_t i = v.size(); i-- > 0;) {
    if (!(v[i] > 0.0)) throw DomainError("almost_decreasing_constant: values must be positive");
    suffix_max = std::max(suffix_max, v[i]);
    best = std::max(best, suffix_max / v[i]);
  }
  return best;
}

double almost_decreasing_constant(const SampledFunction& v) { return almost_decreasing_constant(v.values()); }

std::vector<double> default_epsilons(const ExponentFunction& p, const LogGrid& grid, int depth, double delta) {
  double scale = 1.0 - 1.0 / p.bounds({0.0, delta}, grid).p_plus;
  if (scale <= 0.0) scale = 1.0;
  std::vector<double> eps;
  for (int k = 0; k <= depth; ++k) eps.push_back(std::ldexp(scale, -k));
  return eps;
}

C3Result criterion_C3(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& epsilons,
                      const std::vector<double>& a_list, double delta) {
  for (double e : epsilons) {
    if (!(e > 0.0)) throw ParameterError("criterion_C3: epsilons must be positive");
  }
  const KnotsPtr knots = exponent_knots(p, grid);
  std::vector<double> ux;
  std::vector<double> lphi;
  for (double x : knots->x()) {
    if (x >= delta) break;
    ux.push_back(std::log(x));
    lphi.push_back(p.log_phi(x));
  }
  const std::size_t m = ux.size();
  std::vector<std::size_t> start;
  for (double a : a_list) {
    start.push_back(static_cast<std::size_t>(std::lower_bound(ux.begin(), ux.end(), std::log(a)) - ux.begin()));
  }

  // ln of the almost-decreasing constant of t^eps φ on [a, δ) for every a.
  auto log_constants = [&](double eps) {
    std::vector<double> tail_max(m + 1, 0.0);
    double suffix = -kInf;
    for (std::size_t i = m; i-- > 0;) {
      const double lv = eps * ux[i] + lphi[i];
      suffix = std::max(suffix, lv);
      tail_max[i] = std::max(tail_max[i + 1], suffix - lv);
    }
    std::vector<double> out;
    for (std::size_t s : start) out.push_back(tail_max[std::min(s, m)]);
    return out;
  };

  const std::size_t na = a_list.size();
  std::vector<double> best_k(na, kInf);
  std::vector<double> best_eps(na, 0.0);
  std::vector<double> best_c(na, 0.0);
  for (double eps : epsilons) {
    const auto lc = log_constants(eps);
    for (std::size_t i = 0; i < na; ++i) {
      const double k = std::exp(lc[i]) / eps;
      if (k < best_k[i]) {
        best_k[i] = k;
        best_eps[i] = eps;
        best_c[i] = std::exp(lc[i]);
      }
    }
  }
  const auto lc0 = log_constants(0.0);

  C3Result out;
  std::vector<SeriesPoint> series;
  std::vector<SeriesPoint> phi_series;
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < na; ++i) {
    series.push_back(point(a_list[i], best_k[i]));
    phi_series.push_back(point(a_list[i], std::exp(lc0[i])));
    if (a_list[i] < a_list[deepest]) deepest = i;
  }
  if (na > 0) {
    out.best_epsilon = best_eps[deepest];
    out.constant = best_c[deepest];
  }
  out.verdict = classify_series(std::move(series), "a");
  out.phi_almost_decreasing = classify_series(std::move(phi_series), "a");
  return out;
}

BoundednessVerdict criterion_C4(const ExponentFunction& p, const LogGrid& grid,
                                const std::vector<double>& a_list, double delta) {
  const KnotsPtr knots = scan_knots(p, grid, a_list, delta);
  auto x = knots->x();
  auto u = knots->u();
  std::vector<double> pk(x.size());
  std::vector<double> qk(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    pk[k] = p(x[k]);
    qk[k] = p.conjugate_reciprocal(x[k]);
  }
  std::vector<SeriesPoint> series;
  for (double a : a_list) {
    const double base = p.conjugate_reciprocal(a) * std::log(a);
    std::vector<double> g(x.size(), 0.0);
    bool overflow = false;
    for (std::size_t k = knots->cell_right(a); k < x.size() && !overflow; ++k) {
      const double e = pk[k] * (base - qk[k] * u[k]);
      overflow = e > kExpLimit;
      g[k] = overflow ? 0.0 : std::exp(e);
    }
    const double s =
        overflow ? kInf : integrate_dlog(SampledFunction(knots, std::move(g), Interp::power_law), a, delta);
    series.push_back(point(a, s));
  }
  return classify_series(std::move(series), "a");
}

BoundednessVerdict criterion_C5(const ExponentFunction& p, const LogGrid& grid,
                                const std::vector<double>& a_list, double delta, double tol) {
  const KnotsPtr knots = scan_knots(p, grid, a_list, delta);
  std::vector<SeriesPoint> series(a_list.size());
  parallel_for(a_list.size(), [&](std::size_t i) {
    const double a = a_list[i];
    const double phi = p.phi(a);
    const NormValue n = norm_of_inverse_x(p, knots, a, delta, tol);
    series[i] = {a, level_of(a), n.value / phi, n.lo / phi, n.hi / phi};
  });
  return classify_series(std::move(series), "a");
}

Oscillation dyadic_oscillation(const ExponentFunction& p, const LogGrid& grid) {
  auto series = block_series(scan_points(p, grid), 2, dyadic_depth(grid), [&](double x) {
    return std::abs(p.conjugate_reciprocal(2.0 * x) - p.conjugate_reciprocal(x)) * -std::log(x);
  });
  Oscillation out;
  out.verdict = classify_series(std::move(series), "x");
  out.sup = out.verdict.sup_value;
  return out;
}

Doubling phi_doubling(const ExponentFunction& p, const LogGrid& grid) {
  const std::vector<double> pts = scan_points(p, grid);
  std::vector<double> lphi(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) lphi[i] = p.log_phi(pts[i]);

  auto ratio = [&](double x) {
    const auto first = std::lower_bound(pts.begin(), pts.end(), 0.5 * x);
    const auto last = std::upper_bound(pts.begin(), pts.end(), 2.0 * x);
    double top = std::max(p.log_phi(0.5 * x), p.log_phi(2.0 * x));
    for (auto it = first; it != last; ++it) {
      top = std::max(top, lphi[static_cast<std::size_t>(it - pts.begin())]);
    }
    return std::exp(top - p.log_phi(x));
  };
  Doubling out;
  out.verdict = classify_series(block_series(pts, 3, dyadic_depth(grid) - 1, ratio), "x");
  out.value = out.verdict.sup_value;
  return out;
}

}  // namespace hardyvx

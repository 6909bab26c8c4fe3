#include "hardyvx/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "hardyvx/error.hpp"
#include "hardyvx/parallel.hpp"

namespace hardyvx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string label(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", key, v);
  return buf;
}

void keep_if_finite(TestFamily& fam, const ExponentFunction& p, TestMember m) {
  if (modular(m.f, p).infinite) {
    fam.skipped.push_back(m.label + ": infinite modular");
    return;
  }
  fam.members.push_back(std::move(m));
}

}  // namespace

SampledFunction hardy_average(const SampledFunction& f) {
  const SampledFunction cum = cumulative_integral(f);
  auto x = f.knots().x();
  std::vector<double> out(cum.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cum[k] / x[k];
  return SampledFunction(f.knots_ptr(), std::move(out), Interp::power_law);
}

SampledFunction hardy_average_scaled(const SampledFunction& f) {
  const Knots& kn = f.knots();
  auto x = kn.x();
  auto u = kn.u();
  auto v = f.values();
  const std::size_t n = kn.size();
  for (double value : v) {
    if (value < 0.0) throw ParameterError("hardy_average_scaled: f must be nonnegative");
  }

  // Split every cell at its midpoint in ln x, with the interpolated midpoint
  // value; sub[2k], sub[2k+1] are the two halves of cell k.
  std::vector<double> sub(2 * (n - 1), 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (u[k + 1] <= u[k]) continue;
    const double um = 0.5 * (u[k] + u[k + 1]);
    double vm = 0.5 * (v[k] + v[k + 1]);
    if (f.interp() == Interp::power_law && v[k] > 0.0 && v[k + 1] > 0.0) vm = std::sqrt(v[k] * v[k + 1]);
    sub[2 * k] = detail::cell_dx(u[k], um, v[k], vm, f.interp());
    sub[2 * k + 1] = detail::cell_dx(um, u[k + 1], vm, v[k + 1], f.interp());
  }
  const double head = head_integral(f);

  // ∫_0^1 f(t x_i) dt: each piece of [0, x_i] maps to a t-interval of
  // length scaled by 1/x_i.
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = 1.0 / x[i];
    double sum = head * scale;
    for (std::size_t j = 0; j < 2 * i; ++j) sum += sub[j] * scale;
    out[i] = sum;
  }
  return SampledFunction(f.knots_ptr(), std::move(out), Interp::power_law);
}

RayleighQuotient rayleigh_quotient(const SampledFunction& f, const ExponentFunction& p, double tol) {
  RayleighQuotient q;
  q.denominator = luxemburg_norm(f, p, {}, tol);
  if (q.denominator.value == 0.0) throw DomainError("rayleigh_quotient: ‖f‖ = 0");
  try {
    q.numerator = luxemburg_norm(hardy_average(f), p, {}, tol);
  } catch (const UnboundedNormError&) {
    q.numerator = {kInf, 0.0, kInf, kInf, kInf};
  }
  q.value = q.numerator.value / q.denominator.value;
  q.lo = q.numerator.lo / q.denominator.hi;
  q.hi = q.numerator.hi / q.denominator.lo;
  return q;
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::power:
      return "power";
    case FamilyKind::dyadic_indicator:
      return "dyadic_indicator";
    case FamilyKind::necessity:
      return "necessity";
    case FamilyKind::random_step:
      return "random_step";
  }
  return "power";
}

FamilyKind family_kind_from_string(const std::string& name) {
  for (FamilyKind k : {FamilyKind::power, FamilyKind::dyadic_indicator, FamilyKind::necessity,
                       FamilyKind::random_step}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown test family \"" + name + "\"");
}

SampledFunction necessity_test_function(const ExponentFunction& p, const LogGrid& grid, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("necessity_test_function: a must lie in (0,1]");
  const double lo = 0.5 * a;
  const auto pts = grid.points();
  const auto inside = std::count_if(pts.begin(), pts.end(), [&](double x) { return x > lo && x < a; });
  if (lo <= grid.x_min() || inside < 8) {
    throw ResolutionError("necessity_test_function: support (a/2, a) at a = " + std::to_string(a) +
                          " holds " + std::to_string(inside) + " grid points, need 8 above x_min");
  }
  const double edges[] = {lo, a};
  return SampledFunction::sample(
      exponent_knots(p, grid, edges),
      [&](double x) { return (x >= lo && x < a) ? std::exp(-std::log(x) / p.eval(x)) : 0.0; },
      Interp::power_law);
}

std::vector<double> default_power_betas(const ExponentFunction& p, const LogGrid& grid) {
  const double top = 1.0 / p.bounds({0.0, 1.0}, grid).p_minus - 0.01;
  std::vector<double> betas;
  for (int k = 1; 0.05 * k < top - 1e-9; ++k) betas.push_back(0.05 * k);
  if (top > 0.0) betas.push_back(top);
  return betas;
}

TestFamily power_family(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& betas) {
  TestFamily fam{FamilyKind::power, {}, {}};
  const KnotsPtr knots = exponent_knots(p, grid);
  for (double beta : betas) {
    auto f = SampledFunction::sample(knots, [beta](double x) { return std::pow(x, -beta); }, Interp::power_law);
    keep_if_finite(fam, p, {label("beta", beta), beta, std::move(f)});
  }
  return fam;
}

TestFamily necessity_family(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& a_list) {
  TestFamily fam{FamilyKind::necessity, {}, {}};
  for (double a : a_list) keep_if_finite(fam, p, {label("a", a), a, necessity_test_function(p, grid, a)});
  return fam;
}

TestFamily dyadic_indicator_family(const ExponentFunction& p, const LogGrid& grid,
                                   const std::vector<int>& levels) {
  TestFamily fam{FamilyKind::dyadic_indicator, {}, {}};
  for (int k : levels) {
    const double hi = std::ldexp(1.0, -k);
    const double lo = 0.5 * hi;
    if (lo < grid.x_min()) {
      throw ResolutionError("dyadic indicator level " + std::to_string(k) + " reaches below x_min");
    }
    const double edges[] = {lo, hi};
    auto f = SampledFunction::sample(
        exponent_knots(p, grid, edges), [&](double x) { return (x >= lo && x < hi) ? 1.0 : 0.0; },
        Interp::log_linear);
    keep_if_finite(fam, p, {label("k", k), static_cast<double>(k), std::move(f)});
  }
  return fam;
}

TestFamily random_step_family(const ExponentFunction& p, const LogGrid& grid, std::uint64_t seed,
                              int pieces, int count) {
  if (pieces < 1 || count < 0) throw ParameterError("random_step_family: need pieces >= 1, count >= 0");
  TestFamily fam{FamilyKind::random_step, {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_x(std::log(grid.x_min()), 0.0);
  std::uniform_real_distribution<double> height(0.1, 3.0);
  for (int m = 0; m < count; ++m) {
    std::vector<double> breaks(static_cast<std::size_t>(pieces - 1));
    for (double& b : breaks) b = std::exp(log_x(rng));
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> values(static_cast<std::size_t>(pieces));
    for (double& h : values) h = height(rng);
    auto f = SampledFunction::sample(
        exponent_knots(p, grid, breaks),
        [&](double x) {
          const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
          return values[static_cast<std::size_t>(it - breaks.begin())];
        },
        Interp::log_linear);
    keep_if_finite(fam, p, {label("step", m), static_cast<double>(m), std::move(f)});
  }
  return fam;
}

LowerBound operator_norm_lower_bound(const ExponentFunction& p, const std::vector<TestFamily>& families,
                                     double tol) {
  LowerBound out;
  std::vector<const TestMember*> members;
  std::vector<FamilyKind> kinds;
  for (const TestFamily& fam : families) {
    out.skipped.insert(out.skipped.end(), fam.skipped.begin(), fam.skipped.end());
    for (const TestMember& m : fam.members) {
      members.push_back(&m);
      kinds.push_back(fam.kind);
    }
  }
  if (members.empty()) throw ParameterError("operator_norm_lower_bound: no test functions");

  std::vector<MemberQuotient> quotients(members.size());
  std::vector<std::string> failures(members.size());
  parallel_for(members.size(), [&](std::size_t i) {
    quotients[i] = {kinds[i], members[i]->label, members[i]->parameter, {}};
    try {
      quotients[i].quotient = rayleigh_quotient(members[i]->f, p, tol);
    } catch (const DivergentHeadError& e) {
      failures[i] = members[i]->label + ": " + e.what();
    }
  });
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!failures[i].empty()) {
      out.skipped.push_back(failures[i]);
      continue;
    }
    if (out.quotients.empty() || quotients[i].quotient.value > out.quotients[out.argmax].quotient.value) {
      out.argmax = out.quotients.size();
    }
    out.quotients.push_back(std::move(quotients[i]));
  }
  if (out.quotients.empty()) throw ParameterError("operator_norm_lower_bound: every member was skipped");
  out.value = out.quotients[out.argmax].quotient.value;
  return out;
}

}  // namespace hardyvx

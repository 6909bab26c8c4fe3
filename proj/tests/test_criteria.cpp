#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <doctest.h>

#include "hardyvx/audit.hpp"
#include "hardyvx/catalog.hpp"
#include "hardyvx/criteria.hpp"
#include "hardyvx/error.hpp"
#include "hardyvx/report.hpp"
#include "oracles.hpp"

using namespace hardyvx;
using doctest::Approx;

namespace {

const LogGrid& grid() {
  static const LogGrid g(1e-12, 1201);
  return g;
}

std::vector<SeriesPoint> series_of(const std::vector<double>& values) {
  std::vector<SeriesPoint> s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double level = static_cast<double>(i + 1);
    s.push_back({std::ldexp(1.0, -static_cast<int>(i + 1)), level, values[i], values[i], values[i]});
  }
  return s;
}

VerdictClass cls_of(const std::vector<double>& values) { return classify_series(series_of(values), "a").cls; }

void check_series(const BoundednessVerdict& v, const std::function<double(double)>& expected, double eps) {
  REQUIRE_FALSE(v.series.empty());
  for (const auto& s : v.series) {
    INFO("a=", s.param);
    CHECK(s.value == Approx(expected(s.param)).epsilon(eps));
  }
}

const std::vector<double>& a_list() {
  static const auto list = dyadic_a_list(grid(), 1.0, 30);
  return list;
}

struct ThreadsGuard {
  explicit ThreadsGuard(const char* v) { setenv("HARDYVX_THREADS", v, 1); }
  ~ThreadsGuard() { unsetenv("HARDYVX_THREADS"); }
};

}  // namespace

TEST_CASE("classify_series") {
  // nine points: the verdict reads the last three
  CHECK(cls_of({1, 1, 1, 1, 1, 1, 1, 1, 1}) == VerdictClass::bounded);
  CHECK(cls_of({5, 1, 1, 1, 1, 1, 1, 1, 1}) == VerdictClass::bounded);
  CHECK(cls_of({1, 2, 3, 4, 5, 6, 7, 8, 9}) == VerdictClass::divergent);
  CHECK(cls_of({1, 1, 1, 1, 1, 1, 1.01, 1.02, 1.03}) == VerdictClass::bounded);
  CHECK(cls_of({1, 1, 1, 1, 1, 1, 1.0, 1.1, 1.12}) == VerdictClass::inconclusive);
  CHECK(cls_of({1, 1, 1, 1, 1, 1, 1.0, 1.3, 1.3}) == VerdictClass::inconclusive);
  CHECK(cls_of({0, 0, 0, 0, 0, 0, 0, 0, 0}) == VerdictClass::bounded);
  CHECK(cls_of({-3, -2, -1, -1, -2, -1, -1, -2, -1}) == VerdictClass::bounded);
  CHECK(cls_of({1, 2, 3, 4, 5, 6}) == VerdictClass::inconclusive);
  CHECK(cls_of({1, 1, 1, 1, 1, 1, 1, 1, INFINITY}) == VerdictClass::divergent);
  CHECK(cls_of({1, 1, 1, 1, 1, 1, 1, NAN, 1}) == VerdictClass::inconclusive);
  CHECK(cls_of({}) == VerdictClass::inconclusive);

  const auto v = classify_series(series_of({1, 2, 3, 4, 5, 6, 7, 8, 9}), "x");
  CHECK(v.param_name == "x");
  CHECK(v.sup_value == 9.0);
  CHECK(v.trend_slope == Approx(1.0));
  CHECK(v.series.front().level == 1.0);
}

TEST_CASE("dyadic levels") {
  CHECK(dyadic_depth(grid()) == 39);
  const auto list = dyadic_a_list(grid(), 1.0);
  REQUIRE(list.size() == 39);
  CHECK(list.front() == 0.5);
  CHECK(list.back() == std::ldexp(1.0, -39));
  CHECK(dyadic_a_list(grid(), 0.25).front() == 0.125);
  CHECK(dyadic_a_list(grid(), 1.0, 5).size() == 5);
}

TEST_CASE("condition A") {
  CHECK(condition_A(ExponentFunction(Constant{2.0}), grid()).cls == VerdictClass::bounded);
  const auto a1 = condition_A(catalog_exponent("log-perturbed-a1"), grid());
  CHECK(a1.cls == VerdictClass::bounded);
  CHECK(a1.sup_value == Approx(1.0).epsilon(1e-12));
  CHECK(a1.param_name == "x");
  const auto a05 = condition_A(catalog_exponent("log-perturbed-a05"), grid());
  CHECK(a05.cls == VerdictClass::divergent);
  // ln(1/x)^{1/2} at the first scan point of the deepest block
  const auto pts = grid().points();
  const double first = *std::lower_bound(pts.begin(), pts.end(), std::ldexp(1.0, -39));
  CHECK(a05.sup_value == Approx(std::sqrt(-std::log(first))).epsilon(1e-12));
}

TEST_CASE("condition B") {
  const auto c = condition_B(ExponentFunction(Constant{2.0}), grid());
  CHECK(c.verdict.cls == VerdictClass::bounded);
  CHECK(c.threshold == Approx(2.0));
  CHECK(c.margin == Approx(2.0));
  const auto w = condition_B(catalog_exponent("dyadic-jump-default"), grid());
  CHECK(w.verdict.cls == VerdictClass::divergent);
  const auto n = condition_B(catalog_exponent("nonincreasing-log"), grid());
  CHECK(n.verdict.cls == VerdictClass::bounded);
  CHECK(n.limsup <= 0.0);
}

TEST_CASE("C2 closed forms") {
  check_series(criterion_C2(ExponentFunction(Constant{2.0}), grid(), a_list()),
               [](double a) { return 2.0 * (1.0 - std::sqrt(a)); }, 1e-9);
  check_series(criterion_C2(ExponentFunction(Constant{1.0}), grid(), a_list()),
               [](double a) { return std::log(1.0 / a); }, 1e-9);
  check_series(criterion_C2(ExponentFunction(Constant{3.0}), grid(), a_list()),
               [](double a) { return 1.5 * (1.0 - std::pow(a, 2.0 / 3.0)); }, 1e-9);
  CHECK(criterion_C2(ExponentFunction(Constant{2.0}), grid(), a_list()).cls == VerdictClass::bounded);
  CHECK(criterion_C2(ExponentFunction(Constant{1.0}), grid(), a_list()).cls == VerdictClass::divergent);
}

TEST_CASE("C2 for a log perturbation converges to quadrature") {
  const auto p = catalog_exponent("log-perturbed-a1");
  const auto phi = [&](double t) { return p.phi(t); };
  const double kink = std::exp(-1.0);
  const auto exact = [&](double a) {
    const double integral = a < kink ? oracle::gauss_dlog(phi, a, kink) + oracle::gauss_dlog(phi, kink, 1.0)
                                     : oracle::gauss_dlog(phi, a, 1.0);
    return integral / phi(a);
  };
  const auto worst = [&](std::size_t n) {
    const LogGrid g(1e-12, n);
    double err = 0.0;
    for (const auto& s : criterion_C2(p, g, dyadic_a_list(g, 1.0, 30)).series) {
      err = std::max(err, std::abs(s.value / exact(s.param) - 1.0));
    }
    return err;
  };
  const double coarse = worst(1201);
  const double fine = worst(2401);
  CHECK(coarse < 1e-4);
  // power-law cells are second order in the step
  CHECK(fine < coarse / 3.0);
}

TEST_CASE("C4 and C5 closed forms") {
  const ExponentFunction two(Constant{2.0});
  const ExponentFunction three(Constant{3.0});
  check_series(criterion_C4(two, grid(), a_list()), [](double a) { return 1.0 - a; }, 1e-9);
  check_series(criterion_C4(three, grid(), a_list()), [](double a) { return 0.5 * (1.0 - a * a); }, 1e-9);
  check_series(criterion_C5(two, grid(), a_list()), [](double a) { return std::sqrt(1.0 - a); }, 1e-8);
  check_series(criterion_C5(three, grid(), a_list()), [](double a) { return std::cbrt(0.5 * (1.0 - a * a)); }, 1e-8);
  for (const auto& s : criterion_C5(two, grid(), a_list()).series) {
    CHECK(s.lo <= s.value);
    CHECK(s.value <= s.hi);
  }
}

TEST_CASE("almost decreasing constant matches brute force") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.01, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 40);
    for (double& x : v) x = unit(rng);
    CHECK(almost_decreasing_constant(v) == Approx(oracle::almost_decreasing_brute(v)).epsilon(1e-12));
  }
  const std::vector<double> down = {5, 4, 3, 2, 1};
  CHECK(almost_decreasing_constant(down) == 1.0);
  const std::vector<double> bad = {1, 0, 2};
  CHECK_THROWS_AS(almost_decreasing_constant(bad), DomainError);
}

TEST_CASE("C3") {
  const ExponentFunction two(Constant{2.0});
  const auto r = criterion_C3(two, grid(), {0.25}, a_list());
  CHECK(r.constant == Approx(1.0).epsilon(1e-12));
  CHECK(r.best_epsilon == 0.25);
  CHECK(r.verdict.cls == VerdictClass::bounded);
  CHECK(r.phi_almost_decreasing.cls == VerdictClass::bounded);

  const ExponentFunction one(Constant{1.0});
  const auto d = criterion_C3(one, grid(), default_epsilons(one, grid()), a_list());
  CHECK(d.verdict.cls == VerdictClass::divergent);

  const auto lp = catalog_exponent("log-perturbed-a1");
  const auto b = criterion_C3(lp, grid(), default_epsilons(lp, grid()), a_list());
  CHECK(b.verdict.cls == VerdictClass::bounded);
  CHECK(b.best_epsilon > 0.0);
  CHECK(b.best_epsilon < 0.5);
}

TEST_CASE("default epsilons") {
  const auto e = default_epsilons(ExponentFunction(Constant{2.0}), grid(), 3);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == Approx(0.5));
  CHECK(e[3] == Approx(0.0625));
  CHECK(default_epsilons(ExponentFunction(Constant{1.0}), grid(), 2).front() == 1.0);
}

TEST_CASE("oscillation and doubling") {
  const ExponentFunction two(Constant{2.0});
  CHECK(dyadic_oscillation(two, grid()).sup == Approx(0.0).scale(1.0));
  CHECK(dyadic_oscillation(two, grid()).verdict.cls == VerdictClass::bounded);
  CHECK(phi_doubling(two, grid()).value == Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(phi_doubling(ExponentFunction(Constant{1.0}), grid()).value == Approx(1.0).epsilon(1e-12));
  const auto w = catalog_exponent("dyadic-jump-default");
  CHECK(dyadic_oscillation(w, grid()).verdict.cls == VerdictClass::divergent);
  const auto dbl = phi_doubling(w, grid());
  const auto& s = dbl.verdict.series;
  REQUIRE(s.size() >= 4);
  CHECK(s.back().value > s[s.size() - 4].value);
}

TEST_CASE("audit of constant exponents") {
  const auto r2 = equivalence_audit(ExponentFunction(Constant{2.0}, "c2"));
  CHECK(r2.agreement);
  CHECK(r2.expected == VerdictClass::bounded);
  CHECK(r2.C2->cls == VerdictClass::bounded);
  CHECK(r2.C1->trend.cls == VerdictClass::bounded);
  CHECK(r2.C1->bound.value <= 2.0);

  const auto r1 = equivalence_audit(ExponentFunction(Constant{1.0}, "c1"));
  CHECK(r1.agreement);
  CHECK(r1.expected == VerdictClass::divergent);
  for (auto c : {r1.C2->cls, r1.C3->verdict.cls, r1.C4->cls, r1.C5->cls}) CHECK(c == VerdictClass::divergent);
}

TEST_CASE("audit of the dyadic-jump witness") {
  const auto r = equivalence_audit(catalog_exponent("dyadic-jump-default"));
  CHECK(r.agreement);
  CHECK(r.monotonicity.cls == Monotonicity::nondecreasing);
  CHECK(r.B->verdict.cls == VerdictClass::divergent);
  CHECK(r.C1->trend.cls == VerdictClass::divergent);
  for (auto c : {r.C2->cls, r.C3->verdict.cls, r.C4->cls, r.C5->cls}) CHECK(c == VerdictClass::divergent);
  CHECK(r.oscillation->verdict.cls == VerdictClass::divergent);
}

TEST_CASE("audit of a nonincreasing exponent") {
  const auto r = equivalence_audit(catalog_exponent("nonincreasing-log"));
  CHECK(r.agreement);
  CHECK(r.monotonicity.cls == Monotonicity::nonincreasing);
  CHECK(r.A->cls == VerdictClass::divergent);
  CHECK(r.C1->trend.cls == VerdictClass::bounded);
}

TEST_CASE("nonmonotone exponents are localized") {
  const auto r = equivalence_audit(ExponentFunction(PiecewiseLinear{{0.1, 0.3, 0.6}, {2.0, 3.0, 2.5}}, "bump"));
  CHECK(r.delta_localized);
  CHECK(r.delta == 0.25);
  CHECK(r.agreement);
  CHECK(r.C2->cls == VerdictClass::bounded);
}

TEST_CASE("selected criteria only") {
  AuditConfig cfg;
  cfg.criteria = {Criterion::A, Criterion::C2};
  const auto r = equivalence_audit(ExponentFunction(Constant{2.0}), cfg);
  CHECK(r.A.has_value());
  CHECK(r.C2.has_value());
  CHECK_FALSE(r.C1.has_value());
  CHECK_FALSE(r.C5.has_value());
}

TEST_CASE("criterion names round trip") {
  for (auto c : all_criteria()) CHECK(criterion_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(criterion_from_string("C9"), ParameterError);
}

TEST_CASE("audit output does not depend on the thread count") {
  const auto p = catalog_exponent("piecewise-linear");
  AuditConfig cfg;
  cfg.families = {FamilyKind::power, FamilyKind::necessity, FamilyKind::dyadic_indicator, FamilyKind::random_step};
  std::string serial;
  std::string threaded;
  {
    ThreadsGuard g("1");
    serial = to_json(equivalence_audit(p, cfg)).dump();
  }
  {
    ThreadsGuard g("4");
    threaded = to_json(equivalence_audit(p, cfg)).dump();
  }
  CHECK(serial == threaded);
}

TEST_CASE("catalog audits agree and pass every cross-check") {
  for (const auto& e : catalog()) {
    const auto r = equivalence_audit(ExponentFunction(e.family, e.name));
    INFO(e.name);
    CHECK(r.agreement);
    for (const CrossCheck* c : {&r.c2_c3_equivalence, &r.c4_implies_c2, &r.c5_implies_c4, &r.necessity_chain}) {
      INFO(c->detail);
      CHECK((!c->applicable || c->pass));
    }
  }
}

TEST_CASE("catalog verdicts do not move with x_min") {
  AuditConfig shallow;
  shallow.x_min = 1e-10;
  for (const auto& e : catalog()) {
    const ExponentFunction p(e.family, e.name);
    const auto deep = equivalence_audit(p);
    const auto other = equivalence_audit(p, shallow);
    INFO(e.name);
    CHECK(deep.C2->cls == other.C2->cls);
    CHECK(deep.C4->cls == other.C4->cls);
    CHECK(deep.C5->cls == other.C5->cls);
    CHECK(deep.C3->verdict.cls == other.C3->verdict.cls);
    CHECK(deep.expected == other.expected);
  }
}

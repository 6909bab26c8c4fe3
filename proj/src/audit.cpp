#include "hardyvx/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "hardyvx/error.hpp"

namespace hardyvx {

namespace {

bool bounded(const BoundednessVerdict& v) { return v.cls == VerdictClass::bounded; }

std::string verdict_word(const BoundednessVerdict& v) { return to_string(v.cls); }

std::vector<TestFamily> build_families(const ExponentFunction& p, const LogGrid& grid, const AuditConfig& cfg,
                                       int depth, std::vector<std::string>& notes) {
  std::vector<TestFamily> out;
  for (FamilyKind kind : cfg.families) {
    switch (kind) {
      case FamilyKind::power:
        out.push_back(power_family(p, grid, default_power_betas(p, grid)));
        break;
      case FamilyKind::necessity: {
        TestFamily fam{FamilyKind::necessity, {}, {}};
        for (int j = 1; j <= cfg.necessity_depth; ++j) {
          const double a = std::ldexp(1.0, -j);
          try {
            TestFamily one = necessity_family(p, grid, {a});
            for (auto& m : one.members) fam.members.push_back(std::move(m));
            for (auto& s : one.skipped) fam.skipped.push_back(std::move(s));
          } catch (const ResolutionError& e) {
            fam.skipped.push_back(e.what());
          }
        }
        out.push_back(std::move(fam));
        break;
      }
      case FamilyKind::dyadic_indicator: {
        std::vector<int> levels;
        for (int k = 1; k < depth; ++k) levels.push_back(k);
        out.push_back(dyadic_indicator_family(p, grid, levels));
        break;
      }
      case FamilyKind::random_step:
        out.push_back(random_step_family(p, grid, cfg.random_seed, cfg.random_pieces, cfg.random_count));
        break;
    }
  }
  for (const auto& fam : out) {
    for (const auto& s : fam.skipped) notes.push_back(std::string(to_string(fam.kind)) + " skipped " + s);
  }
  return out;
}

BoundednessVerdict c1_trend(const LowerBound& bound) {
  std::map<int, SeriesPoint> by_level;
  for (const MemberQuotient& q : bound.quotients) {
    int level = 0;
    if (q.kind == FamilyKind::necessity) {
      level = static_cast<int>(std::lround(-std::log2(q.parameter)));
    } else if (q.kind == FamilyKind::dyadic_indicator) {
      level = static_cast<int>(q.parameter);
    } else {
      continue;
    }
    const SeriesPoint pt{std::ldexp(1.0, -level), static_cast<double>(level), q.quotient.value, q.quotient.lo,
                         q.quotient.hi};
    auto [it, fresh] = by_level.emplace(level, pt);
    if (!fresh && pt.value > it->second.value) it->second = pt;
  }
  std::vector<SeriesPoint> series;
  for (const auto& [level, pt] : by_level) series.push_back(pt);
  return classify_series(std::move(series), "a");
}

void check_c5_implies_c4(CriterionReport& r, const ExponentFunction& p, const LogGrid& grid) {
  CrossCheck& c = r.c5_implies_c4;
  c.applicable = true;
  c.worst_slack = std::numeric_limits<double>::infinity();
  const auto& s4 = r.C4->series;
  const auto& s5 = r.C5->series;
  for (std::size_t i = 0; i < std::min(s4.size(), s5.size()); ++i) {
    if (s4[i].param != s5[i].param) throw Error("audit: C4 and C5 scanned different a values");
    const double a = s4[i].param;
    const double ratio = s5[i].hi;
    const ExponentBounds b = p.bounds({a, r.delta}, grid);
    const double k = std::max(1.0, std::pow(ratio, b.p_minus - b.p_plus));
    const double bound = std::pow(ratio, b.p_plus) * k;
    const double slack = (bound - s4[i].value) / bound;
    if (slack < c.worst_slack) {
      c.worst_slack = slack;
      c.detail = "tightest at a = " + std::to_string(a);
    }
  }
  c.pass = c.worst_slack >= -1e-8;
}

void check_necessity_chain(CriterionReport& r, const ExponentFunction& p, const std::vector<TestFamily>& families) {
  CrossCheck& c = r.necessity_chain;
  c.worst_slack = std::numeric_limits<double>::infinity();
  const double weight = std::pow(2.0, -r.bounds.p_plus);
  for (const TestFamily& fam : families) {
    if (fam.kind != FamilyKind::necessity) continue;
    for (const TestMember& m : fam.members) {
      const auto& s4 = r.C4->series;
      const auto it = std::find_if(s4.begin(), s4.end(), [&](const SeriesPoint& s) { return s.param == m.parameter; });
      if (it == s4.end()) continue;
      c.applicable = true;
      const double lower = weight * it->value;
      const double i_h = modular(hardy_average(m.f), p).value;
      const double slack = (i_h - lower) / i_h;
      if (slack < c.worst_slack) {
        c.worst_slack = slack;
        c.detail = "tightest at " + m.label;
      }
    }
  }
  if (!c.applicable) c.worst_slack = 0.0;
  c.pass = c.worst_slack >= -1e-6;
}

void decide_agreement(CriterionReport& r, const ExponentFunction& p, const LogGrid& grid) {
  const Monotonicity cls = r.monotonicity.cls;
  if (cls == Monotonicity::nonmonotone) {
    r.rule = "p is not monotone near 0; no criterion applies";
  } else if (cls == Monotonicity::nondecreasing) {
    r.rule = "p nondecreasing: C1, C2, C3, C4, C5 share one class";
    std::vector<std::pair<std::string, VerdictClass>> classes;
    if (r.C1 && r.C1->has_trend) classes.emplace_back("C1", r.C1->trend.cls);
    if (r.C2) classes.emplace_back("C2", r.C2->cls);
    if (r.C3) classes.emplace_back("C3", r.C3->verdict.cls);
    if (r.C4) classes.emplace_back("C4", r.C4->cls);
    if (r.C5) classes.emplace_back("C5", r.C5->cls);
    if (r.p0.value == 1.0) {
      r.expected = VerdictClass::divergent;
      r.rule += "; p(0) = 1 forces divergent";
    }
    if (!classes.empty()) {
      const VerdictClass first = classes.front().second;
      const bool same = std::all_of(classes.begin(), classes.end(), [&](const auto& c) { return c.second == first; });
      std::string listing;
      for (const auto& [name, c] : classes) listing += " " + name + "=" + to_string(c);
      if (!same || first == VerdictClass::inconclusive) {
        r.agreement = false;
        r.notes.push_back("criterion classes differ or are inconclusive:" + listing);
      } else if (r.expected && first != *r.expected) {
        r.agreement = false;
        r.notes.push_back("expected " + std::string(to_string(*r.expected)) + ", got" + listing);
      } else {
        r.expected = first;
      }
    }
  } else {
    const double p_minus = p.bounds({0.0, r.delta}, grid).p_minus;
    if (p_minus <= 1.0) {
      r.rule = "p nonincreasing with p- = 1: the averaging bound degenerates, no expectation";
      r.notes.push_back("nonincreasing p with p- = 1 reported without an expected class");
    } else {
      r.rule = "p nonincreasing: the averaging operator is bounded";
      r.expected = VerdictClass::bounded;
      if (r.C1 && r.C1->has_trend && r.C1->trend.cls != VerdictClass::bounded) {
        r.agreement = false;
        r.notes.push_back("C1 trend is " + verdict_word(r.C1->trend) + ", expected bounded");
      }
    }
  }
  const std::pair<const char*, const CrossCheck*> checks[] = {{"C2/C3 equivalence", &r.c2_c3_equivalence},
                                                              {"C4 implies C2", &r.c4_implies_c2},
                                                              {"C5 implies C4", &r.c5_implies_c4},
                                                              {"necessity chain", &r.necessity_chain}};
  for (const auto& [name, c] : checks) {
    if (c->applicable && !c->pass) {
      r.agreement = false;
      r.notes.push_back(std::string(name) + " failed: " + c->detail);
    }
  }
}

}  // namespace

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::A:
      return "A";
    case Criterion::B:
      return "B";
    case Criterion::C1:
      return "C1";
    case Criterion::C2:
      return "C2";
    case Criterion::C3:
      return "C3";
    case Criterion::C4:
      return "C4";
    case Criterion::C5:
      return "C5";
    case Criterion::oscillation:
      return "oscillation";
    case Criterion::doubling:
      return "doubling";
  }
  return "A";
}

std::vector<Criterion> all_criteria() {
  return {Criterion::A,  Criterion::B,  Criterion::C1,          Criterion::C2,      Criterion::C3,
          Criterion::C4, Criterion::C5, Criterion::oscillation, Criterion::doubling};
}

Criterion criterion_from_string(const std::string& name) {
  for (Criterion c : all_criteria()) {
    if (name == to_string(c)) return c;
  }
  throw ParameterError("unknown criterion \"" + name + "\"");
}

CriterionReport equivalence_audit(const ExponentFunction& p, const AuditConfig& cfg) {
  const LogGrid grid(cfg.x_min, cfg.n);
  CriterionReport r;
  r.exponent_id = p.id();
  r.family = p.family_name();
  r.x_min = cfg.x_min;
  r.n = cfg.n;
  r.p0 = p.limit_at_origin();
  r.bounds = p.bounds({0.0, 1.0}, grid);

  const int depth = cfg.dyadic_depth > 0 ? std::min(cfg.dyadic_depth, dyadic_depth(grid)) : dyadic_depth(grid);
  if (cfg.delta) {
    if (!(*cfg.delta > 0.0 && *cfg.delta <= 1.0)) throw ParameterError("delta must lie in (0,1]");
    r.delta = *cfg.delta;
    r.delta_localized = r.delta < 1.0;
    r.monotonicity = p.classify_monotonicity(r.delta);
  } else {
    r.monotonicity = p.classify_monotonicity(1.0);
    for (int k = 1; r.monotonicity.cls == Monotonicity::nonmonotone && k + 6 <= depth; ++k) {
      const MonotonicityClass local = p.classify_monotonicity(std::ldexp(1.0, -k));
      if (local.cls != Monotonicity::nonmonotone) {
        r.monotonicity = local;
        r.delta = std::ldexp(1.0, -k);
        r.delta_localized = true;
      }
    }
  }

  auto selected = [&](Criterion c) { return std::find(cfg.criteria.begin(), cfg.criteria.end(), c) != cfg.criteria.end(); };
  const std::vector<double> a_list = dyadic_a_list(grid, r.delta, depth);

  if (selected(Criterion::A)) r.A = condition_A(p, grid);
  if (selected(Criterion::B)) r.B = condition_B(p, grid);
  if (selected(Criterion::C2)) r.C2 = criterion_C2(p, grid, a_list, r.delta);
  if (selected(Criterion::C3)) {
    r.C3 = criterion_C3(p, grid, default_epsilons(p, grid, cfg.epsilon_depth, r.delta), a_list, r.delta);
  }
  if (selected(Criterion::C4)) r.C4 = criterion_C4(p, grid, a_list, r.delta);
  if (selected(Criterion::C5)) r.C5 = criterion_C5(p, grid, a_list, r.delta, cfg.norm_tol);
  if (selected(Criterion::oscillation)) r.oscillation = dyadic_oscillation(p, grid);
  if (selected(Criterion::doubling)) r.doubling = phi_doubling(p, grid);

  std::vector<TestFamily> families;
  if (selected(Criterion::C1) && !cfg.families.empty()) {
    families = build_families(p, grid, cfg, depth, r.notes);
    EmpiricalC1 c1;
    c1.bound = operator_norm_lower_bound(p, families, cfg.norm_tol);
    c1.trend = c1_trend(c1.bound);
    c1.has_trend = !c1.trend.series.empty();
    for (const MemberQuotient& q : c1.bound.quotients) {
      for (double bias : {q.quotient.numerator.truncation_bias, q.quotient.denominator.truncation_bias}) {
        if (std::isfinite(bias)) r.truncation_bias = std::max(r.truncation_bias, bias);
      }
    }
    r.C1 = std::move(c1);
  }

  if (r.C2 && r.C3) {
    r.c2_c3_equivalence.applicable = true;
    r.c2_c3_equivalence.pass = bounded(*r.C2) == bounded(r.C3->verdict);
    r.c2_c3_equivalence.detail = "C2 " + verdict_word(*r.C2) + ", C3 " + verdict_word(r.C3->verdict);
  }
  if (r.C4 && bounded(*r.C4) && r.C2 && r.C3) {
    r.c4_implies_c2.applicable = true;
    r.c4_implies_c2.pass = bounded(*r.C2) && bounded(r.C3->phi_almost_decreasing);
    r.c4_implies_c2.detail =
        "C2 " + verdict_word(*r.C2) + ", phi almost decreasing " + verdict_word(r.C3->phi_almost_decreasing);
  }
  if (r.C4 && r.C5) check_c5_implies_c4(r, p, grid);
  if (r.C4 && r.monotonicity.cls == Monotonicity::nondecreasing && !families.empty()) {
    check_necessity_chain(r, p, families);
  }
  decide_agreement(r, p, grid);
  return r;
}

}  // namespace hardyvx

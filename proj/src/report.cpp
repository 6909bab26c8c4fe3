#include "hardyvx/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hardyvx/error.hpp"

namespace hardyvx {

using nlohmann::json;

namespace {

VerdictClass verdict_class_from_string(const std::string& s) {
  for (VerdictClass c : {VerdictClass::bounded, VerdictClass::divergent, VerdictClass::inconclusive}) {
    if (s == to_string(c)) return c;
  }
  throw ParameterError("unknown verdict class \"" + s + "\"");
}

Monotonicity monotonicity_from_string(const std::string& s) {
  for (Monotonicity m : {Monotonicity::nonincreasing, Monotonicity::nondecreasing, Monotonicity::nonmonotone}) {
    if (s == to_string(m)) return m;
  }
  throw ParameterError("unknown monotonicity \"" + s + "\"");
}

json norm_json(const NormValue& n) {
  return {{"value", number_to_json(n.value)},
          {"tol", number_to_json(n.tol)},
          {"lo", number_to_json(n.lo)},
          {"hi", number_to_json(n.hi)},
          {"truncation_bias", number_to_json(n.truncation_bias)}};
}

NormValue norm_from(const json& j) {
  return {number_from_json(j.at("value")), number_from_json(j.at("tol")), number_from_json(j.at("lo")),
          number_from_json(j.at("hi")), number_from_json(j.at("truncation_bias"))};
}

json check_json(const CrossCheck& c) {
  return {{"applicable", c.applicable},
          {"pass", c.pass},
          {"worst_slack", number_to_json(c.worst_slack)},
          {"detail", c.detail}};
}

CrossCheck check_from(const json& j) {
  return {j.at("applicable").get<bool>(), j.at("pass").get<bool>(), number_from_json(j.at("worst_slack")),
          j.at("detail").get<std::string>()};
}

json c1_json(const EmpiricalC1& c) {
  json quotients = json::array();
  for (const MemberQuotient& q : c.bound.quotients) {
    quotients.push_back({{"family", to_string(q.kind)},
                         {"label", q.label},
                         {"parameter", number_to_json(q.parameter)},
                         {"value", number_to_json(q.quotient.value)},
                         {"lo", number_to_json(q.quotient.lo)},
                         {"hi", number_to_json(q.quotient.hi)},
                         {"numerator", norm_json(q.quotient.numerator)},
                         {"denominator", norm_json(q.quotient.denominator)}});
  }
  return {{"lower_bound", number_to_json(c.bound.value)},
          {"argmax", c.bound.argmax},
          {"argmax_label", c.bound.quotients.empty() ? "" : c.bound.quotients[c.bound.argmax].label},
          {"quotients", quotients},
          {"skipped", c.bound.skipped},
          {"trend", c.has_trend ? to_json(c.trend) : json(nullptr)}};
}

EmpiricalC1 c1_from(const json& j) {
  EmpiricalC1 c;
  c.bound.value = number_from_json(j.at("lower_bound"));
  c.bound.argmax = j.at("argmax").get<std::size_t>();
  for (const json& q : j.at("quotients")) {
    MemberQuotient m;
    m.kind = family_kind_from_string(q.at("family").get<std::string>());
    m.label = q.at("label").get<std::string>();
    m.parameter = number_from_json(q.at("parameter"));
    m.quotient.value = number_from_json(q.at("value"));
    m.quotient.lo = number_from_json(q.at("lo"));
    m.quotient.hi = number_from_json(q.at("hi"));
    m.quotient.numerator = norm_from(q.at("numerator"));
    m.quotient.denominator = norm_from(q.at("denominator"));
    c.bound.quotients.push_back(std::move(m));
  }
  c.bound.skipped = j.at("skipped").get<std::vector<std::string>>();
  c.has_trend = !j.at("trend").is_null();
  if (c.has_trend) c.trend = verdict_from_json(j.at("trend"));
  return c;
}

std::string number_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParameterError("expected a number, got " + j.dump());
}

json to_json(const BoundednessVerdict& v) {
  json series = json::array();
  for (const SeriesPoint& p : v.series) {
    series.push_back({{"param", number_to_json(p.param)},
                      {"level", number_to_json(p.level)},
                      {"value", number_to_json(p.value)},
                      {"lo", number_to_json(p.lo)},
                      {"hi", number_to_json(p.hi)}});
  }
  return {{"class", to_string(v.cls)},
          {"sup_value", number_to_json(v.sup_value)},
          {"param", v.param_name},
          {"trend_slope", number_to_json(v.trend_slope)},
          {"series", series}};
}

BoundednessVerdict verdict_from_json(const json& j) {
  BoundednessVerdict v;
  v.cls = verdict_class_from_string(j.at("class").get<std::string>());
  v.sup_value = number_from_json(j.at("sup_value"));
  v.param_name = j.at("param").get<std::string>();
  v.trend_slope = number_from_json(j.at("trend_slope"));
  for (const json& p : j.at("series")) {
    v.series.push_back({number_from_json(p.at("param")), number_from_json(p.at("level")),
                        number_from_json(p.at("value")), number_from_json(p.at("lo")),
                        number_from_json(p.at("hi"))});
  }
  return v;
}

json to_json(const CriterionReport& r) {
  json crit = json::object();
  if (r.A) crit["A"] = to_json(*r.A);
  if (r.B) {
    crit["B"] = {{"verdict", to_json(r.B->verdict)},
                 {"limsup", number_to_json(r.B->limsup)},
                 {"threshold", number_to_json(r.B->threshold)},
                 {"margin", number_to_json(r.B->margin)}};
  }
  if (r.C1) crit["C1"] = c1_json(*r.C1);
  if (r.C2) crit["C2"] = to_json(*r.C2);
  if (r.C3) {
    crit["C3"] = {{"best_epsilon", number_to_json(r.C3->best_epsilon)},
                  {"constant", number_to_json(r.C3->constant)},
                  {"verdict", to_json(r.C3->verdict)},
                  {"phi_almost_decreasing", to_json(r.C3->phi_almost_decreasing)}};
  }
  if (r.C4) crit["C4"] = to_json(*r.C4);
  if (r.C5) crit["C5"] = to_json(*r.C5);
  if (r.oscillation) {
    crit["oscillation"] = {{"sup", number_to_json(r.oscillation->sup)}, {"verdict", to_json(r.oscillation->verdict)}};
  }
  if (r.doubling) {
    crit["doubling"] = {{"value", number_to_json(r.doubling->value)}, {"verdict", to_json(r.doubling->verdict)}};
  }
  return {
      {"exponent", {{"id", r.exponent_id}, {"family", r.family}}},
      {"monotonicity",
       {{"class", to_string(r.monotonicity.cls)},
        {"certified_on", number_to_json(r.monotonicity.certified_on)},
        {"constant", r.monotonicity.constant},
        {"grid_certified", r.monotonicity.grid_certified}}},
      {"p0", {{"value", number_to_json(r.p0.value)}, {"approximate", r.p0.approximate}}},
      {"bounds",
       {{"p_minus", number_to_json(r.bounds.p_minus)},
        {"p_plus", number_to_json(r.bounds.p_plus)},
        {"approximate", r.bounds.approximate}}},
      {"delta", number_to_json(r.delta)},
      {"delta_localized", r.delta_localized},
      {"grid", {{"x_min", number_to_json(r.x_min)}, {"n", r.n}}},
      {"criteria", crit},
      {"cross_checks",
       {{"c2_c3_equivalence", check_json(r.c2_c3_equivalence)},
        {"c4_implies_c2", check_json(r.c4_implies_c2)},
        {"c5_implies_c4", check_json(r.c5_implies_c4)},
        {"necessity_chain", check_json(r.necessity_chain)}}},
      {"expected", r.expected ? json(to_string(*r.expected)) : json(nullptr)},
      {"agreement", r.agreement},
      {"rule", r.rule},
      {"notes", r.notes},
      {"truncation_bias", number_to_json(r.truncation_bias)},
  };
}

CriterionReport criterion_report_from_json(const json& j) {
  CriterionReport r;
  r.exponent_id = j.at("exponent").at("id").get<std::string>();
  r.family = j.at("exponent").at("family").get<std::string>();
  const json& m = j.at("monotonicity");
  r.monotonicity = {monotonicity_from_string(m.at("class").get<std::string>()),
                    number_from_json(m.at("certified_on")), m.at("constant").get<bool>(),
                    m.at("grid_certified").get<bool>()};
  r.p0 = {number_from_json(j.at("p0").at("value")), j.at("p0").at("approximate").get<bool>()};
  r.bounds = {number_from_json(j.at("bounds").at("p_minus")), number_from_json(j.at("bounds").at("p_plus")),
              j.at("bounds").at("approximate").get<bool>()};
  r.delta = number_from_json(j.at("delta"));
  r.delta_localized = j.at("delta_localized").get<bool>();
  r.x_min = number_from_json(j.at("grid").at("x_min"));
  r.n = j.at("grid").at("n").get<std::size_t>();

  const json& c = j.at("criteria");
  if (c.contains("A")) r.A = verdict_from_json(c.at("A"));
  if (c.contains("B")) {
    const json& b = c.at("B");
    r.B = ConditionB{verdict_from_json(b.at("verdict")), number_from_json(b.at("limsup")),
                     number_from_json(b.at("threshold")), number_from_json(b.at("margin"))};
  }
  if (c.contains("C1")) r.C1 = c1_from(c.at("C1"));
  if (c.contains("C2")) r.C2 = verdict_from_json(c.at("C2"));
  if (c.contains("C3")) {
    const json& c3 = c.at("C3");
    r.C3 = C3Result{number_from_json(c3.at("best_epsilon")), number_from_json(c3.at("constant")),
                    verdict_from_json(c3.at("verdict")), verdict_from_json(c3.at("phi_almost_decreasing"))};
  }
  if (c.contains("C4")) r.C4 = verdict_from_json(c.at("C4"));
  if (c.contains("C5")) r.C5 = verdict_from_json(c.at("C5"));
  if (c.contains("oscillation")) {
    r.oscillation = Oscillation{number_from_json(c.at("oscillation").at("sup")),
                                verdict_from_json(c.at("oscillation").at("verdict"))};
  }
  if (c.contains("doubling")) {
    r.doubling = Doubling{number_from_json(c.at("doubling").at("value")),
                          verdict_from_json(c.at("doubling").at("verdict"))};
  }
  const json& x = j.at("cross_checks");
  r.c2_c3_equivalence = check_from(x.at("c2_c3_equivalence"));
  r.c4_implies_c2 = check_from(x.at("c4_implies_c2"));
  r.c5_implies_c4 = check_from(x.at("c5_implies_c4"));
  r.necessity_chain = check_from(x.at("necessity_chain"));
  if (!j.at("expected").is_null()) r.expected = verdict_class_from_string(j.at("expected").get<std::string>());
  r.agreement = j.at("agreement").get<bool>();
  r.rule = j.at("rule").get<std::string>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.truncation_bias = number_from_json(j.at("truncation_bias"));
  return r;
}

json to_json(const RunReport& r) {
  return {{"version", r.version},
          {"config", r.config},
          {"report", to_json(r.report)},
          {"exit_code", r.exit_code},
          {"timing", {{"timestamp", r.timestamp}, {"wall_seconds", r.wall_seconds}}}};
}

RunReport run_report_from_json(const json& j) {
  RunReport r;
  r.version = j.at("version").get<std::string>();
  r.config = j.at("config");
  r.report = criterion_report_from_json(j.at("report"));
  r.exit_code = j.at("exit_code").get<int>();
  r.timestamp = j.at("timing").at("timestamp").get<std::string>();
  r.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
  return r;
}

json canonical(const json& report) {
  json out = report;
  out.erase("timing");
  return out;
}

std::string series_csv(const BoundednessVerdict& v) {
  std::string out = v.param_name + ",value,lo,hi\n";
  for (const SeriesPoint& p : v.series) {
    out += number_text(p.param) + "," + number_text(p.value) + "," + number_text(p.lo) + "," + number_text(p.hi) + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, const BoundednessVerdict*>> report_series(const CriterionReport& r) {
  std::vector<std::pair<std::string, const BoundednessVerdict*>> out;
  if (r.A) out.emplace_back("A", &*r.A);
  if (r.B) out.emplace_back("B", &r.B->verdict);
  if (r.C1 && r.C1->has_trend) out.emplace_back("C1", &r.C1->trend);
  if (r.C2) out.emplace_back("C2", &*r.C2);
  if (r.C3) {
    out.emplace_back("C3", &r.C3->verdict);
    out.emplace_back("C3_phi", &r.C3->phi_almost_decreasing);
  }
  if (r.C4) out.emplace_back("C4", &*r.C4);
  if (r.C5) out.emplace_back("C5", &*r.C5);
  if (r.oscillation) out.emplace_back("oscillation", &r.oscillation->verdict);
  if (r.doubling) out.emplace_back("doubling", &r.doubling->verdict);
  return out;
}

std::vector<std::filesystem::path> emit(const RunReport& r, OutputFormat format, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw Error("cannot write " + path.string());
    written.push_back(path);
  };
  write(dir / "report.json", to_json(r).dump(2) + "\n");
  if (format == OutputFormat::csv) {
    for (const auto& [name, verdict] : report_series(r.report)) write(dir / (name + ".csv"), series_csv(*verdict));
  }
  return written;
}

}  // namespace hardyvx

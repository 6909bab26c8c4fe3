#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "hardyvx/catalog.hpp"
#include "hardyvx/config.hpp"
#include "hardyvx/report.hpp"
#include "hardyvx/scenario.hpp"

using namespace hardyvx;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hardyvx_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_violation(const ConfigError& e, const std::string& needle) {
  for (const auto& v : e.violations()) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

const char* kSmall = R"({"exponent": {"catalog": "constant-2"}, "grid": {"x_min": 1e-8, "n": 401}})";

}  // namespace

TEST_CASE("config defaults") {
  const auto cfg = parse_config(R"({"exponent": {"family": "constant", "p0": 2}})");
  CHECK(std::get<Constant>(cfg.family).p0 == 2.0);
  CHECK(cfg.audit.x_min == 1e-12);
  CHECK(cfg.audit.n == 1201);
  CHECK_FALSE(cfg.audit.delta.has_value());
  CHECK(cfg.audit.criteria == all_criteria());
  CHECK(cfg.audit.families.size() == 3);
  CHECK(cfg.format == OutputFormat::json);
  CHECK(cfg.output_dir.empty());
  CHECK(cfg.echo["schema_version"] == kSchemaVersion);
  CHECK(cfg.echo["grid"]["n"] == 1201);
  CHECK(cfg.echo["tolerances"]["norm"] == kDefaultNormTol);
  CHECK(cfg.echo["random_step"]["count"] == 8);
}

TEST_CASE("config rejects p0 below one") {
  try {
    parse_config(R"({"exponent": {"family": "constant", "p0": 0.5}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_violation(e, "/exponent/p0: p0 < 1"));
  }
}

TEST_CASE("config looks up catalog entries") {
  const auto cfg = parse_config(R"({"exponent": {"catalog": "dyadic-jump-default"}})");
  CHECK(cfg.exponent_id == "dyadic-jump-default");
  CHECK(std::holds_alternative<DyadicJump>(cfg.family));
  CHECK_THROWS_AS(parse_config(R"({"exponent": {"catalog": "nope"}})"), ConfigError);
}

TEST_CASE("config reports every violation at once") {
  try {
    parse_config(R"({"exponent": {"family": "log-perturbed", "p0": 2, "alpha": -1},
                     "grid": {"x_min": 2, "n": 3},
                     "output": {"format": "xml"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() >= 4);
    CHECK(has_violation(e, "/exponent/alpha"));
    CHECK(has_violation(e, "/grid/x_min"));
    CHECK(has_violation(e, "/grid/n"));
    CHECK(has_violation(e, "/output/format"));
  }
}

TEST_CASE("config rejects unknown fields") {
  try {
    parse_config(R"({"exponent": {"catalog": "constant-2"}, "colour": 1})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_violation(e, "/colour: unknown field"));
  }
  CHECK_THROWS_AS(parse_config(R"({"exponent": {"family": "constant", "p0": 2, "q": 1}})"), ConfigError);
}

TEST_CASE("config rejects text that is not JSON") {
  CHECK_THROWS_AS(parse_config("{exponent:"), ParameterError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("{}"), ConfigError);
}

TEST_CASE("config rejects an inadmissible family") {
  CHECK_THROWS_AS(parse_config(R"({"exponent": {"family": "piecewise-constant", "breakpoints": [0.5], "values": [2]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"exponent": {"family": "dyadic-jump", "p0": 1.5, "jumps": [{"x": 0.5, "height": -1}]}})"),
                  ConfigError);
}

TEST_CASE("run_scenario exit codes") {
  const auto ok = run_scenario(parse_config(kSmall));
  CHECK(ok.exit_code == kExitAgreement);
  CHECK(ok.report.agreement);
  CHECK_FALSE(ok.timestamp.empty());
  CHECK(ok.wall_seconds >= 0.0);

  // Three dyadic levels cannot settle a verdict.
  const auto shallow = run_scenario(parse_config(
      R"({"exponent": {"catalog": "constant-2"}, "grid": {"x_min": 0.1, "n": 64}, "criteria": ["C2"]})"));
  CHECK(shallow.report.C2->cls == VerdictClass::inconclusive);
  CHECK(shallow.exit_code == kExitInconsistent);
}

TEST_CASE("report JSON round trips") {
  const auto r = run_scenario(parse_config(kSmall));
  const json j = to_json(r);
  const auto back = run_report_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(j["version"] == kVersion);
  CHECK(j.contains("timing"));
  CHECK_FALSE(canonical(j).contains("timing"));
}

TEST_CASE("non-finite numbers survive JSON") {
  CHECK(number_to_json(INFINITY) == "inf");
  CHECK(number_to_json(-INFINITY) == "-inf");
  CHECK(number_to_json(NAN) == "nan");
  CHECK(number_from_json(json("inf")) == INFINITY);
  CHECK(std::isnan(number_from_json(json("nan"))));
  CHECK(number_from_json(json(1.5)) == 1.5);
}

TEST_CASE("csv output") {
  const auto r = run_scenario(parse_config(kSmall));
  const std::string csv = series_csv(*r.report.C2);
  CHECK(csv.rfind("a,value,lo,hi\n", 0) == 0);
  CHECK(series_csv(*r.report.A).rfind("x,value,lo,hi\n", 0) == 0);

  const auto dir = scratch("csv");
  const auto paths = emit(r, OutputFormat::csv, dir);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "C2.csv"));
  CHECK(paths.size() == 1 + report_series(r.report).size());
  CHECK(slurp(dir / "C2.csv") == csv);
  std::filesystem::remove_all(dir);
}

TEST_CASE("no criteria means no series files") {
  const auto r = run_scenario(parse_config(R"({"exponent": {"catalog": "constant-2"}, "grid": {"x_min": 1e-8, "n": 401},
                                               "criteria": [], "output": {"format": "csv"}})"));
  const auto dir = scratch("empty");
  const auto paths = emit(r, OutputFormat::csv, dir);
  CHECK(paths.size() == 1);
  CHECK(report_series(r.report).empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("canonical reports are deterministic") {
  const auto cfg = parse_config(R"({"exponent": {"catalog": "piecewise-linear"}, "grid": {"x_min": 1e-8, "n": 401},
                                    "families": ["power", "random_step"]})");
  const auto a = canonical(to_json(run_scenario(cfg))).dump();
  const auto b = canonical(to_json(run_scenario(cfg))).dump();
  CHECK(a == b);
}

TEST_CASE("catalog is complete") {
  const auto& entries = catalog();
  CHECK(entries.size() == 10);
  std::set<std::string> names;
  for (const auto& e : entries) {
    names.insert(e.name);
    CHECK_FALSE(e.description.empty());
    CHECK(catalog_exponent(e.name).id() == e.name);
  }
  CHECK(names.size() == entries.size());
  CHECK_THROWS_AS(catalog_exponent("missing"), ParameterError);
}

TEST_CASE("schema matches the parser") {
  std::ifstream in(HARDYVX_SCHEMA_PATH);
  REQUIRE(in.good());
  const json schema = json::parse(in);
  std::set<std::string> props;
  for (const auto& [k, v] : schema["properties"].items()) props.insert(k);
  const auto sections = config_sections();
  CHECK(props == std::set<std::string>(sections.begin(), sections.end()));

  std::set<std::string> names;
  for (const auto& e : catalog()) names.insert(e.name);
  std::set<std::string> listed;
  for (const auto& alt : schema["properties"]["exponent"]["oneOf"]) {
    if (alt.contains("properties") && alt["properties"].contains("catalog")) {
      for (const auto& n : alt["properties"]["catalog"]["enum"]) listed.insert(n.get<std::string>());
    }
  }
  CHECK(listed == names);
}

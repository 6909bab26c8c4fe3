#include "hardyvx/config.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hardyvx/catalog.hpp"

namespace hardyvx {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

// Collects violations instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  void known_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) == keys.end()) {
        fail(path + "/" + key, "unknown field");
      }
    }
  }

  const json* object(const json& parent, const char* key, const std::string& path) {
    if (!parent.contains(key)) return nullptr;
    const json& v = parent.at(key);
    if (!v.is_object()) {
      fail(path + "/" + key, "must be an object");
      return nullptr;
    }
    return &v;
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& path, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(path + "/" + key, "required");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      fail(path + "/" + key, "must be a finite number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<long long> integer(const json& obj, const char* key, const std::string& path, long long lo,
                                   long long hi) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path + "/" + key, "must be an integer");
      return std::nullopt;
    }
    const long long n = v.get<long long>();
    if (n < lo || n > hi) {
      fail(path + "/" + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return n;
  }

  std::optional<std::vector<double>> numbers(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) {
      fail(path + "/" + key, "required");
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
      fail(path + "/" + key, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        fail(path + "/" + key + "/" + std::to_string(i), "must be a number");
        return std::nullopt;
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      fail(path + "/" + key, "must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::vector<std::string> strings(const json& obj, const char* key, const std::string& path) {
    std::vector<std::string> out;
    const json& v = obj.at(key);
    if (!v.is_array()) {
      fail(path + "/" + key, "must be an array of strings");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        fail(path + "/" + key + "/" + std::to_string(i), "must be a string");
      } else {
        out.push_back(v[i].get<std::string>());
      }
    }
    return out;
  }

  void at_least_one(std::optional<double> p, const std::string& path, const char* name) {
    if (p && *p < 1.0) fail(path, std::string(name) + " < 1");
  }
};

std::optional<ExponentFamily> read_family(Reader& rd, const json& e, const std::string& path) {
  const auto family = rd.string(e, "family", path);
  if (!family) {
    if (!e.contains("family")) rd.fail(path, "needs \"family\" or \"catalog\"");
    return std::nullopt;
  }
  const std::string& f = *family;
  if (f == "constant") {
    rd.known_keys(e, path, {"family", "id", "p0"});
    auto p0 = rd.number(e, "p0", path, true);
    rd.at_least_one(p0, path + "/p0", "p0");
    if (p0) return Constant{*p0};
  } else if (f == "log-perturbed") {
    rd.known_keys(e, path, {"family", "id", "p0", "c", "alpha", "sign"});
    auto p0 = rd.number(e, "p0", path, true);
    auto c = rd.number(e, "c", path, false);
    auto alpha = rd.number(e, "alpha", path, false);
    auto sign = rd.string(e, "sign", path).value_or("+");
    rd.at_least_one(p0, path + "/p0", "p0");
    if (c && *c < 0.0) rd.fail(path + "/c", "c < 0");
    if (alpha && *alpha <= 0.0) rd.fail(path + "/alpha", "alpha <= 0");
    if (sign != "+" && sign != "-") rd.fail(path + "/sign", "must be \"+\" or \"-\"");
    if (p0) return LogPerturbed{*p0, c.value_or(1.0), alpha.value_or(1.0), sign == "-" ? Sign::minus : Sign::plus};
  } else if (f == "loglog-perturbed") {
    rd.known_keys(e, path, {"family", "id", "p0", "c"});
    auto p0 = rd.number(e, "p0", path, true);
    auto c = rd.number(e, "c", path, false);
    rd.at_least_one(p0, path + "/p0", "p0");
    if (p0) return LogLogPerturbed{*p0, c.value_or(1.0)};
  } else if (f == "piecewise-constant" || f == "piecewise-linear") {
    rd.known_keys(e, path, {"family", "id", "breakpoints", "values"});
    auto b = rd.numbers(e, "breakpoints", path);
    auto v = rd.numbers(e, "values", path);
    if (b && v) {
      if (f == "piecewise-constant") return PiecewiseConstant{*b, *v};
      return PiecewiseLinear{*b, *v};
    }
  } else if (f == "dyadic-jump") {
    rd.known_keys(e, path, {"family", "id", "p0", "jumps"});
    auto p0 = rd.number(e, "p0", path, true);
    rd.at_least_one(p0, path + "/p0", "p0");
    DyadicJump d{p0.value_or(1.0), {}};
    if (!e.contains("jumps") || !e.at("jumps").is_array()) {
      rd.fail(path + "/jumps", "required array of {x, height}");
      return std::nullopt;
    }
    const json& jumps = e.at("jumps");
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      const std::string jp = path + "/jumps/" + std::to_string(i);
      if (!jumps[i].is_object()) {
        rd.fail(jp, "must be an object");
        continue;
      }
      rd.known_keys(jumps[i], jp, {"x", "height"});
      auto x = rd.number(jumps[i], "x", jp, true);
      auto h = rd.number(jumps[i], "height", jp, true);
      if (x && h) d.jumps.push_back({*x, *h});
    }
    if (p0) return d;
  } else if (f == "tabulated") {
    rd.known_keys(e, path, {"family", "id", "x", "p"});
    auto x = rd.numbers(e, "x", path);
    auto p = rd.numbers(e, "p", path);
    if (x && p) return Tabulated{*x, *p};
  } else {
    rd.fail(path + "/family", "unknown family \"" + f + "\"");
  }
  return std::nullopt;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : ParameterError("invalid config: " + join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> config_sections() {
  return {"schema_version", "exponent", "grid", "scan", "tolerances", "criteria", "families", "random_step", "output"};
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ParameterError("unknown output format \"" + s + "\"");
}

const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("config is not valid JSON: ") + e.what());
  }
  Reader rd;
  ScenarioConfig cfg;
  if (!root.is_object()) throw ConfigError({"/: config must be a JSON object"});
  const auto sections = config_sections();
  for (const auto& [key, value] : root.items()) {
    if (std::find(sections.begin(), sections.end(), key) == sections.end()) rd.fail("/" + key, "unknown field");
  }
  if (auto v = rd.integer(root, "schema_version", "", 1, 1)) (void)v;

  // exponent
  json exponent_echo;
  if (!root.contains("exponent") || !root.at("exponent").is_object()) {
    rd.fail("/exponent", "required object");
  } else {
    const json& e = root.at("exponent");
    exponent_echo = e;
    if (e.contains("catalog")) {
      rd.known_keys(e, "/exponent", {"catalog"});
      auto name = rd.string(e, "catalog", "/exponent");
      if (name) {
        const auto& entries = catalog();
        const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& c) { return c.name == *name; });
        if (it == entries.end()) {
          rd.fail("/exponent/catalog", "unknown catalog exponent \"" + *name + "\"");
        } else {
          cfg.family = it->family;
          cfg.exponent_id = it->name;
        }
      }
    } else if (const std::size_t before = rd.errors.size(); auto fam = read_family(rd, e, "/exponent")) {
      cfg.family = *fam;
      cfg.exponent_id = rd.string(e, "id", "/exponent").value_or("");
      // admissibility rules the field checks do not cover
      if (rd.errors.size() == before) {
        try {
          cfg.exponent_id = ExponentFunction(cfg.family, cfg.exponent_id).id();
        } catch (const ParameterError& err) {
          rd.fail("/exponent", err.what());
        }
      }
    }
  }

  AuditConfig& a = cfg.audit;
  if (const json* g = rd.object(root, "grid", "")) {
    rd.known_keys(*g, "/grid", {"x_min", "n"});
    if (auto x = rd.number(*g, "x_min", "/grid", false)) {
      if (*x > 0.0 && *x < 1.0) a.x_min = *x;
      else rd.fail("/grid/x_min", "must lie in (0,1)");
    }
    if (auto n = rd.integer(*g, "n", "/grid", 16, 1000000)) a.n = static_cast<std::size_t>(*n);
  }
  if (const json* s = rd.object(root, "scan", "")) {
    rd.known_keys(*s, "/scan", {"delta", "epsilon_depth", "necessity_depth", "dyadic_depth"});
    if (auto d = rd.number(*s, "delta", "/scan", false)) {
      if (*d > 0.0 && *d <= 1.0) a.delta = *d;
      else rd.fail("/scan/delta", "must lie in (0,1]");
    }
    if (auto v = rd.integer(*s, "epsilon_depth", "/scan", 0, 60)) a.epsilon_depth = static_cast<int>(*v);
    if (auto v = rd.integer(*s, "necessity_depth", "/scan", 1, 1000)) a.necessity_depth = static_cast<int>(*v);
    if (auto v = rd.integer(*s, "dyadic_depth", "/scan", 0, 1000)) a.dyadic_depth = static_cast<int>(*v);
  }
  if (const json* t = rd.object(root, "tolerances", "")) {
    rd.known_keys(*t, "/tolerances", {"norm"});
    if (auto v = rd.number(*t, "norm", "/tolerances", false)) {
      if (*v > 0.0 && *v <= 1e-3) a.norm_tol = *v;
      else rd.fail("/tolerances/norm", "must lie in (0, 1e-3]");
    }
  }
  if (root.contains("criteria")) {
    a.criteria.clear();
    const auto names = rd.strings(root, "criteria", "");
    for (std::size_t i = 0; i < names.size(); ++i) {
      try {
        const Criterion c = criterion_from_string(names[i]);
        if (std::find(a.criteria.begin(), a.criteria.end(), c) == a.criteria.end()) a.criteria.push_back(c);
      } catch (const ParameterError& err) {
        rd.fail("/criteria/" + std::to_string(i), err.what());
      }
    }
  }
  if (root.contains("families")) {
    a.families.clear();
    const auto names = rd.strings(root, "families", "");
    for (std::size_t i = 0; i < names.size(); ++i) {
      try {
        const FamilyKind k = family_kind_from_string(names[i]);
        if (std::find(a.families.begin(), a.families.end(), k) == a.families.end()) a.families.push_back(k);
      } catch (const ParameterError& err) {
        rd.fail("/families/" + std::to_string(i), err.what());
      }
    }
  }
  if (const json* r = rd.object(root, "random_step", "")) {
    rd.known_keys(*r, "/random_step", {"seed", "pieces", "count"});
    if (auto v = rd.integer(*r, "seed", "/random_step", 0, INT64_MAX)) a.random_seed = static_cast<std::uint64_t>(*v);
    if (auto v = rd.integer(*r, "pieces", "/random_step", 1, 1000)) a.random_pieces = static_cast<int>(*v);
    if (auto v = rd.integer(*r, "count", "/random_step", 0, 1000)) a.random_count = static_cast<int>(*v);
  }
  if (const json* o = rd.object(root, "output", "")) {
    rd.known_keys(*o, "/output", {"dir", "format"});
    cfg.output_dir = rd.string(*o, "dir", "/output").value_or("");
    if (auto f = rd.string(*o, "format", "/output")) {
      if (*f == "json" || *f == "csv") cfg.format = output_format_from_string(*f);
      else rd.fail("/output/format", "must be \"json\" or \"csv\"");
    }
  }
  if (!rd.errors.empty()) throw ConfigError(rd.errors);

  json criteria = json::array();
  for (Criterion c : a.criteria) criteria.push_back(to_string(c));
  json families = json::array();
  for (FamilyKind k : a.families) families.push_back(to_string(k));
  cfg.echo = {
      {"schema_version", kSchemaVersion},
      {"exponent", exponent_echo},
      {"grid", {{"x_min", a.x_min}, {"n", a.n}}},
      {"scan",
       {{"delta", a.delta ? json(*a.delta) : json(nullptr)},
        {"epsilon_depth", a.epsilon_depth},
        {"necessity_depth", a.necessity_depth},
        {"dyadic_depth", a.dyadic_depth}}},
      {"tolerances", {{"norm", a.norm_tol}}},
      {"criteria", criteria},
      {"families", families},
      {"random_step", {{"seed", a.random_seed}, {"pieces", a.random_pieces}, {"count", a.random_count}}},
      {"output", {{"dir", cfg.output_dir}, {"format", to_string(cfg.format)}}},
  };
  return cfg;
}

}  // namespace hardyvx

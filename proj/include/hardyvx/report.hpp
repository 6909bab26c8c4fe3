#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardyvx/audit.hpp"
#include "hardyvx/config.hpp"

namespace hardyvx {

inline constexpr const char* kVersion = "1.0.0";

struct RunReport {
  nlohmann::json config;  // echo with defaults
  CriterionReport report;
  std::string version = kVersion;
  int exit_code = 0;
  std::string timestamp;  // UTC, ISO 8601
  double wall_seconds = 0.0;
};

/// Non-finite values are written as the strings "inf", "-inf", "nan".
nlohmann::json number_to_json(double v);
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundednessVerdict& v);
BoundednessVerdict verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CriterionReport& r);
CriterionReport criterion_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

/// Report without the "timing" object, for byte comparisons.
nlohmann::json canonical(const nlohmann::json& report);

/// `<param>,value,lo,hi` then one row per point.
std::string series_csv(const BoundednessVerdict& v);

/// Named series present in the report, e.g. {"C2", verdict}.
std::vector<std::pair<std::string, const BoundednessVerdict*>> report_series(const CriterionReport& r);

/// Writes report.json, plus one CSV per series for the csv format. Returns
/// the paths written.
std::vector<std::filesystem::path> emit(const RunReport& r, OutputFormat format, const std::filesystem::path& dir);

}  // namespace hardyvx

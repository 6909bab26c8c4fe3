#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hardyvx/audit.hpp"
#include "hardyvx/error.hpp"
#include "hardyvx/exponent.hpp"

namespace hardyvx {

constexpr int kSchemaVersion = 1;

/// Every violation found while validating a config, each prefixed with its
/// JSON pointer.
class ConfigError : public ParameterError {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

enum class OutputFormat { json, csv };

struct ScenarioConfig {
  ExponentFamily family;
  std::string exponent_id;
  AuditConfig audit;
  std::string output_dir;  // empty: report goes to stdout
  OutputFormat format = OutputFormat::json;
  /// The config with every default filled in.
  nlohmann::json echo;

  ExponentFunction exponent() const { return ExponentFunction(family, exponent_id); }
};

/// Parses and validates a JSON config; throws ConfigError listing every
/// violation, or ParameterError when the text is not JSON.
ScenarioConfig parse_config(const std::string& text);

/// Top-level keys parse_config accepts.
std::vector<std::string> config_sections();

OutputFormat output_format_from_string(const std::string& s);
const char* to_string(OutputFormat f);

}  // namespace hardyvx

#include "hardyvx/scenario.hpp"

#include <chrono>
#include <ctime>

namespace hardyvx {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  out.config = cfg.echo;
  out.timestamp = utc_now();
  out.report = equivalence_audit(cfg.exponent(), cfg.audit);
  out.exit_code = out.report.agreement ? kExitAgreement : kExitInconsistent;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace hardyvx

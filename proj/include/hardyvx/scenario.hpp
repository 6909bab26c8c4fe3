#pragma once

#include "hardyvx/config.hpp"
#include "hardyvx/report.hpp"

namespace hardyvx {

enum ExitCode : int { kExitAgreement = 0, kExitInputError = 1, kExitInconsistent = 2 };

/// Runs the audit described by cfg and stamps the result.
RunReport run_scenario(const ScenarioConfig& cfg);

}  // namespace hardyvx

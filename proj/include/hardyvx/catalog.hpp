#pragma once

#include <string>
#include <vector>

#include "hardyvx/exponent.hpp"

namespace hardyvx {

struct CatalogEntry {
  std::string name;
  std::string description;
  ExponentFamily family;
};

const std::vector<CatalogEntry>& catalog();

/// Throws ParameterError for unknown names.
ExponentFunction catalog_exponent(const std::string& name);

/// p0 = 1.5 with jumps 0.3(√(40-k) - √(39-k)) at 2^-k, k = 20..39.
DyadicJump default_dyadic_jump();

}  // namespace hardyvx

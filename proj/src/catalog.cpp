#include "hardyvx/catalog.hpp"

#include <cmath>

#include "hardyvx/error.hpp"

namespace hardyvx {

DyadicJump default_dyadic_jump() {
  DyadicJump d{1.5, {}};
  for (int k = 20; k <= 39; ++k) {
    d.jumps.push_back({std::ldexp(1.0, -k), 0.3 * (std::sqrt(40.0 - k) - std::sqrt(39.0 - k))});
  }
  return d;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"constant-2", "p = 2", Constant{2.0}},
      {"constant-3", "p = 3", Constant{3.0}},
      {"p-one", "p = 1", Constant{1.0}},
      {"log-perturbed-a1", "p = 2 + 1/ln(1/x)", LogPerturbed{2.0, 1.0, 1.0, Sign::plus}},
      {"log-perturbed-a05", "p = 2 + 1/ln(1/x)^0.5", LogPerturbed{2.0, 1.0, 0.5, Sign::plus}},
      {"loglog-perturbed", "p = 2 + lnln(1/x)/ln(1/x)", LogLogPerturbed{2.0, 1.0}},
      {"step-interior", "p = 2 below 0.3, 3 above", PiecewiseConstant{{0.3}, {2.0, 3.0}}},
      {"piecewise-linear", "p linear from 1.8 at 0.05 to 2.6 at 0.5", PiecewiseLinear{{0.05, 0.5}, {1.8, 2.6}}},
      {"dyadic-jump-default", "p = 1.5 plus jumps 0.3(sqrt(40-k) - sqrt(39-k)) at 2^-k, k = 20..39",
       default_dyadic_jump()},
      {"nonincreasing-log", "p = 3 - 1/ln(1/x)^0.5", LogPerturbed{3.0, 1.0, 0.5, Sign::minus}},
  };
  return entries;
}

ExponentFunction catalog_exponent(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return ExponentFunction(e.family, e.name);
  }
  throw ParameterError("unknown catalog exponent \"" + name + "\"");
}

}  // namespace hardyvx

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardyvx/exponent.hpp"
#include "hardyvx/grid.hpp"
#include "hardyvx/lpnorm.hpp"

namespace hardyvx {

/// Hf(x)/x = (1/x) ∫_0^x f(t) dt at every knot.
SampledFunction hardy_average(const SampledFunction& f);

/// Same quantity through ∫_0^1 f(tx) dt, integrated in t on the knot ratios
/// x_k/x_i refined at cell midpoints. O(n^2); used to cross-check.
SampledFunction hardy_average_scaled(const SampledFunction& f);

struct RayleighQuotient {
  double value = 0.0;
  double lo = 0.0;  // from the two norm brackets
  double hi = 0.0;
  NormValue numerator;    // ‖Hf/x‖
  NormValue denominator;  // ‖f‖
};

/// ‖Hf/x‖ / ‖f‖ on (0,1).
RayleighQuotient rayleigh_quotient(const SampledFunction& f, const ExponentFunction& p,
                                   double tol = kDefaultNormTol);

enum class FamilyKind { power, dyadic_indicator, necessity, random_step };

const char* to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

struct TestMember {
  std::string label;
  /// β, a, level k or member number, by family.
  double parameter = 0.0;
  SampledFunction f;
};

struct TestFamily {
  FamilyKind kind = FamilyKind::power;
  std::vector<TestMember> members;
  /// Members dropped because their modular is infinite.
  std::vector<std::string> skipped;
};

/// f0(x) = x^{-1/p(x)} on [a/2, a), 0 elsewhere.
SampledFunction necessity_test_function(const ExponentFunction& p, const LogGrid& grid, double a);

/// β = 0.05, 0.10, ... below 1/p- - 0.01, then 1/p- - 0.01 itself.
std::vector<double> default_power_betas(const ExponentFunction& p, const LogGrid& grid);

TestFamily power_family(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& betas);
TestFamily necessity_family(const ExponentFunction& p, const LogGrid& grid, const std::vector<double>& a_list);
/// χ_[2^{-k-1}, 2^{-k}) for each level k.
TestFamily dyadic_indicator_family(const ExponentFunction& p, const LogGrid& grid,
                                   const std::vector<int>& levels);
/// `count` positive step functions with `pieces` log-uniform pieces each.
TestFamily random_step_family(const ExponentFunction& p, const LogGrid& grid, std::uint64_t seed,
                              int pieces, int count);

struct MemberQuotient {
  FamilyKind kind = FamilyKind::power;
  std::string label;
  double parameter = 0.0;
  RayleighQuotient quotient;
};

struct LowerBound {
  double value = 0.0;
  std::size_t argmax = 0;  // index into quotients
  std::vector<MemberQuotient> quotients;
  std::vector<std::string> skipped;
};

/// Max Rayleigh quotient over all members; ties keep the lowest index.
LowerBound operator_norm_lower_bound(const ExponentFunction& p, const std::vector<TestFamily>& families,
                                     double tol = kDefaultNormTol);

}  // namespace hardyvx

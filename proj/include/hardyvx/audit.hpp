#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardyvx/criteria.hpp"
#include "hardyvx/exponent.hpp"
#include "hardyvx/hardy.hpp"

namespace hardyvx {

enum class Criterion { A, B, C1, C2, C3, C4, C5, oscillation, doubling };

const char* to_string(Criterion c);
Criterion criterion_from_string(const std::string& name);
std::vector<Criterion> all_criteria();

struct AuditConfig {
  double x_min = 1e-12;
  std::size_t n = 1201;
  std::optional<double> delta;  // unset: 1, or the localized δ0 for nonmonotone p
  int epsilon_depth = 12;
  int necessity_depth = 30;
  int dyadic_depth = 0;  // 0: as deep as the grid allows
  double norm_tol = kDefaultNormTol;
  std::vector<Criterion> criteria = all_criteria();
  std::vector<FamilyKind> families = {FamilyKind::power, FamilyKind::necessity, FamilyKind::dyadic_indicator};
  std::uint64_t random_seed = 1;
  int random_pieces = 8;
  int random_count = 8;
};

struct CrossCheck {
  bool applicable = false;
  bool pass = true;
  double worst_slack = 0.0;  // relative; negative means violated
  std::string detail;
};

struct EmpiricalC1 {
  LowerBound bound;
  /// Per level j: max of the necessity quotient at a = 2^-j and the
  /// indicator quotient at k = j.
  BoundednessVerdict trend;
  bool has_trend = false;
};

struct CriterionReport {
  std::string exponent_id;
  std::string family;
  MonotonicityClass monotonicity;
  OriginLimit p0;
  ExponentBounds bounds;  // over (0,1)
  double delta = 1.0;
  bool delta_localized = false;
  double x_min = 1e-12;
  std::size_t n = 1201;

  std::optional<BoundednessVerdict> A;
  std::optional<ConditionB> B;
  std::optional<EmpiricalC1> C1;
  std::optional<BoundednessVerdict> C2;
  std::optional<C3Result> C3;
  std::optional<BoundednessVerdict> C4;
  std::optional<BoundednessVerdict> C5;
  std::optional<Oscillation> oscillation;
  std::optional<Doubling> doubling;

  CrossCheck c2_c3_equivalence;
  CrossCheck c4_implies_c2;
  CrossCheck c5_implies_c4;
  CrossCheck necessity_chain;

  std::optional<VerdictClass> expected;
  bool agreement = true;
  std::string rule;
  std::vector<std::string> notes;
  double truncation_bias = 0.0;  // largest head share among the C1 norms
};

/// Runs the selected criteria on p and checks them against each other.
CriterionReport equivalence_audit(const ExponentFunction& p, const AuditConfig& cfg = {});

}  // namespace hardyvx

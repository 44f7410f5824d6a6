#pragma once

#include <string>
#include <vector>

namespace casimir {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst deviation observed
  double tolerance = 0.0;  // pass threshold for `measured`
  std::string detail;
};

/// Number of acceptance criteria.
constexpr int kCriterionCount = 12;

/// Runs one criterion (1-based). Exceptions are caught and reported as a
/// failure with the message in `detail`.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance();

/// "PASS [3] name: measured=... tol=... detail"
std::string format_criterion(const CriterionResult& r);

} // namespace casimir

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace rsq {

/// One verified identity: the worst residual over all samples and the
/// sample that produced it.
struct CheckResult {
  std::string check;     ///< short machine name
  std::string identity;  ///< the relation being tested, in words
  double max_residual = 0.0;
  double tolerance = 0.0;
  int worst_point = -1;
  std::string detail;    ///< which pair/index attained the maximum
  bool pass = true;

  CheckResult() = default;
  CheckResult(std::string check, std::string identity, double max_residual, double tolerance)
      : check(std::move(check)), identity(std::move(identity)), max_residual(max_residual), tolerance(tolerance) {}

  /// Folds one residual into the running maximum.
  void record(double residual, int point, const std::string& where) {
    if (std::isnan(max_residual)) return;
    if (worst_point < 0 || !(residual <= max_residual)) {
      max_residual = residual;
      worst_point = point;
      detail = where;
    }
    pass = max_residual <= tolerance;
  }
};

inline bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace rsq

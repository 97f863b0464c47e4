#pragma once

#include "scs/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace scs::bench {

/// One line of the verify report.
struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Measured quantity and the limit it was held against.
  double value = 0;
  double limit = 0;
  std::string detail;
};

/// Combination weight used in place of the library's lambda*. Lets the
/// suites be run against deliberately broken rules.
using LambdaFn = std::function<double(const Vector& d_prev, const Vector& g)>;

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Empty means the library's minimal-norm rule.
  LambdaFn lambda;
};

/// direction-optimality, hull-membership, norm-rate, stationarity-certificate,
/// p-lambda, grad-check, concentration, optimizer-reductions.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& options = {});

/// Named broken rules for mutation checks: "unclamped" (no projection onto
/// [0, 1]) and "swapped" (the weight of d_prev used as the weight of g).
/// Throws std::invalid_argument for other names.
LambdaFn fault_lambda(const std::string& name);

/// {"suite":..., "check":..., "passed":..., "value":..., "limit":..., "detail":...}
std::string to_json_line(const Check& check);

}  // namespace scs::bench

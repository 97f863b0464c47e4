#pragma once

#include "scs/bench/results.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace scs::bench {

/// Mismatched or unusable inputs to `compare`. Maps to exit code 2.
class CompareError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComparedRun {
  std::string column;
  std::filesystem::path path;
  ResultsFile results;
  /// First step whose recorded loss is <= tau, over all of the file's records.
  std::optional<long> first_below;
};

struct Comparison {
  std::string problem;
  double tau = 0;
  /// Number of aligned steps (the shortest file).
  std::size_t rows = 0;
  std::vector<ComparedRun> runs;
};

/**
 * Loads and aligns at least two results files of the same problem. Columns
 * are named after the optimizer, with the file stem appended when two files
 * share an optimizer. Without `tau` the threshold is the largest final loss
 * among the inputs, so each run gets a time-to-reach number.
 */
Comparison compare_results(const std::vector<std::filesystem::path>& files, std::optional<double> tau = {});

/// CSV text: '#' comment header, "step,<col>..." then one row per aligned
/// step, then the summary rows "final_loss,..." and "first_step_loss_le_tau,...".
std::string comparison_csv(const Comparison& cmp);

/// Shortest decimal text that reads back to exactly `v`; "nan" for NaN.
std::string format_exact(double v);

}  // namespace scs::bench

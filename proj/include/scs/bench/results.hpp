#pragma once

#include "scs/bench/config.hpp"
#include "scs/run.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace scs::bench {

/// End-of-run object written as the last line of a results file.
struct Summary {
  std::string problem;
  std::string optimizer;
  std::uint64_t seed = 0;
  long steps = 0;
  std::string stop_reason;
  std::string message;
  /// Objective over the whole dataset at the final iterate; absent when it
  /// could not be evaluated.
  std::optional<double> final_loss;
};

/**
 * Results files are line-delimited JSON:
 *
 *   {"type":"header", "problem":..., "optimizer":..., "seed":..., "config":{...}}
 *   {"type":"record", "t":1, "epoch":0, "loss":..., "d_norm":..., ...}   (one per step)
 *   {"type":"summary", "final_loss":..., "steps":..., "stop_reason":...}
 *
 * Each line is flushed as soon as it is written, so an interrupted run leaves
 * a parseable prefix. Wall-clock times go to a separate "<out>.timing.csv" so
 * the results file itself is a pure function of the configuration.
 */
class ResultsWriter {
 public:
  ResultsWriter(const std::filesystem::path& path, const RunConfig& config);

  void record(const RunRecord& rec);
  void summary(const Summary& s);

 private:
  std::ofstream out_;
  std::ofstream timing_;
};

struct ResultsFile {
  std::string problem;
  std::string optimizer;
  std::vector<RunRecord> records;
  /// Absent for a truncated file.
  std::optional<Summary> summary;
};

/// Parses a results file; tolerates a missing summary and a torn last line.
ResultsFile read_results(const std::filesystem::path& path);

std::filesystem::path timing_path(const std::filesystem::path& results);

}  // namespace scs::bench

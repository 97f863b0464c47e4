#pragma once

#include "scs/optim.hpp"
#include "scs/problems/objective.hpp"
#include "scs/sampling.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace scs {

struct RunRecord {
  long t = 0;
  long epoch = 0;
  /// Mini-batch loss at the iterate the step started from.
  double loss = 0;
  double d_norm = 0;
  double g_norm = 0;
  double lambda_star = 0;  // NaN outside scsadamw
  std::size_t n_t = 0;
  double wall_ms = 0;
  std::vector<std::string> flags;
};

enum class StopReason { converged, max_steps, numerical_abort, evaluation_error };

std::string_view to_string(StopReason reason);

struct RunResult {
  std::vector<RunRecord> records;
  Vector theta;
  StopReason reason = StopReason::max_steps;
  std::string message;
};

using RecordSink = std::function<void(const RunRecord&)>;

/**
 * sample -> gradient -> step until ||d_t|| <= epsilon_stop (scsadamw only) or
 * `max_steps` steps. Every step appends a record and hands it to `sink`
 * before the next step starts. Failures inside the objective or the step
 * end the run; the records so far are kept and the reason is reported.
 *
 * Throws std::invalid_argument if max_steps < 1.
 */
RunResult run_until_stopped(const Objective& objective, Vector theta, OptimizerState<double>& state, long max_steps,
                            Sampler& sampler, const RecordSink& sink = {}, long steps_per_epoch = 1);

}  // namespace scs

#include "scs/bench/runner.hpp"

#include <cmath>
#include <memory>

namespace scs::bench {

RunOutcome execute_run(const RunConfig& config) {
  const std::unique_ptr<Objective> objective = make_objective(config);
  const long budget = step_budget(*objective, config);
  const long per_epoch = steps_per_epoch(*objective, config);

  OptimizerState<double> state(config.optimizer, config.hyper);
  Sampler sampler(config.sampler, objective->dataset_size(), config.seed);

  std::unique_ptr<ResultsWriter> writer;
  if (!config.out.empty()) {
    try {
      writer = std::make_unique<ResultsWriter>(config.out, config);
    } catch (const std::runtime_error& e) {
      throw ConfigError(e.what());
    }
  }

  RecordSink sink;
  if (writer) sink = [&](const RunRecord& r) { writer->record(r); };

  RunOutcome outcome;
  outcome.result = run_until_stopped(*objective, objective->initial_point(), state, budget, sampler, sink, per_epoch);

  Summary& s = outcome.summary;
  s.problem = config.problem;
  s.optimizer = std::string(to_string(config.optimizer));
  s.seed = config.seed;
  s.steps = static_cast<long>(outcome.result.records.size());
  s.stop_reason = std::string(to_string(outcome.result.reason));
  s.message = outcome.result.message;
  try {
    const double full = objective->full_loss(outcome.result.theta);
    if (std::isfinite(full)) s.final_loss = full;
  } catch (const std::exception&) {
  }
  if (writer) writer->summary(s);

  const bool aborted = outcome.result.reason == StopReason::numerical_abort ||
                       outcome.result.reason == StopReason::evaluation_error;
  outcome.exit_code = aborted ? kExitNumerical : kExitOk;
  return outcome;
}

}  // namespace scs::bench

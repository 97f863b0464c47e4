#include "scs/run.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace scs {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::converged: return "converged";
    case StopReason::max_steps: return "max-steps";
    case StopReason::numerical_abort: return "numerical-abort";
    case StopReason::evaluation_error: return "evaluation-error";
  }
  return "unknown";
}

RunResult run_until_stopped(const Objective& objective, Vector theta, OptimizerState<double>& state, long max_steps,
                            Sampler& sampler, const RecordSink& sink, long steps_per_epoch) {
  if (max_steps < 1) throw std::invalid_argument("run: max-steps must be at least 1");
  if (steps_per_epoch < 1) steps_per_epoch = 1;
  using Clock = std::chrono::steady_clock;

  RunResult result;
  double prev_loss = 0.0;
  double prev_displacement = 0.0;
  bool has_prev = false;
  for (long t = 1; t <= max_steps; ++t) {
    const auto started = Clock::now();
    const Draw draw = sampler.next(t);
    Evaluation eval;
    try {
      eval = objective.evaluate(theta, draw.indices);
    } catch (const NumericalError& e) {
      result.reason = StopReason::numerical_abort;
      result.message = "step " + std::to_string(t) + ": " + e.what();
      break;
    } catch (const std::exception& e) {
      result.reason = StopReason::evaluation_error;
      result.message = "step " + std::to_string(t) + ": " + e.what();
      break;
    }
    if (!std::isfinite(eval.loss)) {
      result.reason = StopReason::numerical_abort;
      result.message = "step " + std::to_string(t) + ": non-finite loss";
      break;
    }

    const Vector before = theta;
    StepInfo info;
    try {
      info = step(state, theta, eval.gradient);
    } catch (const NumericalError& e) {
      result.reason = StopReason::numerical_abort;
      result.message = e.what();
      break;
    }
    if (!theta.allFinite()) {
      result.reason = StopReason::numerical_abort;
      result.message = "step " + std::to_string(t) + ": parameters became non-finite";
      break;
    }

    RunRecord rec;
    rec.t = t;
    rec.epoch = (t - 1) / steps_per_epoch;
    rec.loss = eval.loss;
    rec.d_norm = info.d_norm;
    rec.g_norm = info.g_norm;
    rec.lambda_star = info.lambda_star;
    rec.n_t = draw.indices.size();
    if (draw.capped) rec.flags.emplace_back("sample-cap");
    if (info.report && info.report->certificate_applicable) rec.flags.emplace_back("certificate-applicable");
    if (info.report && info.report->certificate_violated) rec.flags.emplace_back("certificate-violated");

    // Loss change between consecutive iterates over the displacement that
    // produced it.
    sampler.observe(eval.loss, has_prev ? prev_displacement : 0.0, has_prev ? eval.loss - prev_loss : 0.0);
    if (!sampler.plan().kappa_ok) rec.flags.emplace_back("kappa-hypothesis-violated");
    prev_loss = eval.loss;
    prev_displacement = (theta - before).norm();
    has_prev = true;

    rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    result.records.push_back(rec);
    if (sink) sink(result.records.back());

    if (info.report && info.report->stop) {
      result.reason = StopReason::converged;
      break;
    }
  }
  result.theta = std::move(theta);
  return result;
}

}  // namespace scs

#pragma once

#include "scs/direction.hpp"
#include "scs/types.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scs {

enum class OptimizerKind { sgd, polyak, adam, adamw, scsadamw };

std::string_view to_string(OptimizerKind kind);
/// Throws std::invalid_argument for an unknown name.
OptimizerKind parse_optimizer(std::string_view name);

struct HyperParams {
  double eta = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double lambda_wd = 0.0;
  double zeta = 1e-8;
  double epsilon_stop = 1e-8;
  double theta_momentum = 0.9;
  /// Tolerance parameter of the stationarity certificate.
  double eta_th = 1.0;
  bool smooth_lambda = false;
  std::optional<long> restart_period;
  /// Diagnostic: bypass the direction rule and combine with this weight.
  std::optional<double> fixed_lambda;

  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;
};

/// Bias correction of d is skipped once lambda* is this close to 1.
inline constexpr double kLambdaSkipTolerance = 1e-6;

template <typename Scalar = double>
struct OptimizerState {
  OptimizerState(OptimizerKind kind_, HyperParams hyper_, bool track_weights = false)
      : kind(kind_), hyper(hyper_), direction(track_weights) {
    hyper.validate();
  }

  OptimizerKind kind;
  HyperParams hyper;
  long t = 0;
  DirectionState<Scalar> direction;  // scsadamw
  VectorX<Scalar> m;                 // adam, adamw
  VectorX<Scalar> v;                 // adam, adamw, scsadamw
  VectorX<Scalar> prev_delta;        // polyak
};

/// What one step did, uniform across optimizers.
struct StepInfo {
  /// NaN for optimizers without a combination weight.
  double lambda_star = std::numeric_limits<double>::quiet_NaN();
  double d_norm = 0;
  double g_norm = 0;
  std::optional<StoppingReport> report;  // scsadamw only
};

namespace detail {

template <typename Scalar>
void check_step_inputs(const OptimizerState<Scalar>& state, const VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  if (theta.size() != g.size()) {
    throw std::invalid_argument("optimizer step " + std::to_string(state.t + 1) + ": gradient length " +
                                std::to_string(g.size()) + " != parameter length " + std::to_string(theta.size()));
  }
  if (!g.allFinite()) {
    throw NumericalError("optimizer step " + std::to_string(state.t + 1) + ": non-finite gradient rejected");
  }
  auto check_len = [&](const VectorX<Scalar>& buf) {
    if (buf.size() != 0 && buf.size() != theta.size()) {
      throw std::invalid_argument("optimizer state length " + std::to_string(buf.size()) +
                                  " != parameter length " + std::to_string(theta.size()));
    }
  };
  check_len(state.m);
  check_len(state.v);
  check_len(state.prev_delta);
}

template <typename Scalar>
void ensure(VectorX<Scalar>& buf, Eigen::Index n) {
  if (buf.size() == 0) buf = VectorX<Scalar>::Zero(n);
}

template <typename Scalar>
void adam_moments(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  const HyperParams& h = state.hyper;
  ensure(state.m, theta.size());
  ensure(state.v, theta.size());
  state.t += 1;
  const auto b1 = static_cast<Scalar>(h.beta1);
  const auto b2 = static_cast<Scalar>(h.beta2);
  state.m = b1 * state.m + (Scalar(1) - b1) * g;
  state.v = b2 * state.v + (Scalar(1) - b2) * g.cwiseAbs2();
  const Scalar c1 = Scalar(1) - std::pow(b1, static_cast<Scalar>(state.t));
  const Scalar c2 = Scalar(1) - std::pow(b2, static_cast<Scalar>(state.t));
  const auto eta = static_cast<Scalar>(h.eta);
  const auto zeta = static_cast<Scalar>(h.zeta);
  theta.array() -= eta * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + zeta);
}

}  // namespace detail

/// Adam with weight decay folded into the gradient (L2 coupling).
template <typename Scalar>
StepInfo step_adam(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  detail::check_step_inputs(state, theta, g);
  const VectorX<Scalar> effective = g + static_cast<Scalar>(state.hyper.lambda_wd) * theta;
  detail::adam_moments(state, theta, effective);
  StepInfo info;
  info.g_norm = static_cast<double>(g.norm());
  info.d_norm = static_cast<double>(state.m.norm());
  return info;
}

/// Adam on the raw gradient, then theta -= eta * lambda_wd * theta_prev.
template <typename Scalar>
StepInfo step_adamw(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  detail::check_step_inputs(state, theta, g);
  const VectorX<Scalar> before = theta;
  detail::adam_moments(state, theta, g);
  const auto decay = static_cast<Scalar>(state.hyper.eta * state.hyper.lambda_wd);
  if (decay != Scalar(0)) theta -= decay * before;
  StepInfo info;
  info.g_norm = static_cast<double>(g.norm());
  info.d_norm = static_cast<double>(state.m.norm());
  return info;
}

template <typename Scalar>
StepInfo step_sgd(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  detail::check_step_inputs(state, theta, g);
  state.t += 1;
  const auto eta = static_cast<Scalar>(state.hyper.eta);
  const auto wd = static_cast<Scalar>(state.hyper.lambda_wd);
  if (wd != Scalar(0)) {
    theta -= eta * (g + wd * theta);
  } else {
    theta -= eta * g;
  }
  StepInfo info;
  info.g_norm = static_cast<double>(g.norm());
  info.d_norm = info.g_norm;
  return info;
}

/// Heavy ball: theta_{t+1} = theta_t - eta g_t + momentum (theta_t - theta_{t-1}).
template <typename Scalar>
StepInfo step_polyak(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  detail::check_step_inputs(state, theta, g);
  detail::ensure(state.prev_delta, theta.size());
  state.t += 1;
  const auto eta = static_cast<Scalar>(state.hyper.eta);
  const auto wd = static_cast<Scalar>(state.hyper.lambda_wd);
  const auto mu = static_cast<Scalar>(state.hyper.theta_momentum);
  VectorX<Scalar> delta = wd != Scalar(0) ? VectorX<Scalar>(-eta * (g + wd * theta)) : VectorX<Scalar>(-eta * g);
  if (mu != Scalar(0)) delta += mu * state.prev_delta;
  theta += delta;
  state.prev_delta = std::move(delta);
  StepInfo info;
  info.g_norm = static_cast<double>(g.norm());
  info.d_norm = static_cast<double>(state.prev_delta.norm()) / state.hyper.eta;
  return info;
}

/**
 * One iteration of the conjugate-subgradient AdamW update:
 *
 *  1. t += 1
 *  2. d_t = min-norm point of [d_{t-1}, g_t]      (d_1 = g_1)
 *  3. v_t = beta2 v_{t-1} + (1 - beta2) g_t^2
 *  4. d^ = d_t / (1 - lambda^t), v^ = v_t / (1 - beta2^t); the d correction
 *     is skipped at t = 1 and whenever lambda >= 1 - 1e-6
 *  5. theta -= eta d^ / (sqrt(v^) + zeta)
 *  6. theta -= eta lambda_wd theta_prev            (theta_prev from before 5)
 *
 * A non-finite gradient throws NumericalError before any state is touched.
 */
template <typename Scalar>
StepInfo step_scsadamw(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  detail::check_step_inputs(state, theta, g);
  if (!state.direction.empty() && state.direction.direction().size() != g.size()) {
    throw std::invalid_argument("optimizer step " + std::to_string(state.t + 1) + ": direction length mismatch");
  }
  const HyperParams& h = state.hyper;
  detail::ensure(state.v, theta.size());
  const long t = state.t + 1;

  if (h.restart_period && t > 1 && (t - 1) % *h.restart_period == 0) state.direction.restart();
  DirectionStep<Scalar> dir;
  if (h.fixed_lambda) {
    dir = update_direction(state.direction, g, FixedRule<Scalar>{static_cast<Scalar>(*h.fixed_lambda)});
  } else if (h.smooth_lambda) {
    dir = update_direction(state.direction, g, SmoothedRule{});
  } else {
    dir = update_direction(state.direction, g);
  }
  state.t = t;

  const auto b2 = static_cast<Scalar>(h.beta2);
  state.v = b2 * state.v + (Scalar(1) - b2) * g.cwiseAbs2();

  const bool skip = t == 1 || !dir.has_prev || dir.lambda >= Scalar(1 - kLambdaSkipTolerance);
  const Scalar d_scale = skip ? Scalar(1) : Scalar(1) / (Scalar(1) - std::pow(dir.lambda, static_cast<Scalar>(t)));
  const Scalar v_scale = Scalar(1) / (Scalar(1) - std::pow(b2, static_cast<Scalar>(t)));

  const VectorX<Scalar> before = theta;
  const auto eta = static_cast<Scalar>(h.eta);
  const auto zeta = static_cast<Scalar>(h.zeta);
  theta.array() -= eta * (dir.d.array() * d_scale) / ((state.v.array() * v_scale).sqrt() + zeta);
  const auto decay = static_cast<Scalar>(h.eta * h.lambda_wd);
  if (decay != Scalar(0)) theta -= decay * before;

  StepInfo info;
  info.lambda_star = static_cast<double>(dir.lambda);
  info.d_norm = static_cast<double>(dir.d_norm);
  info.g_norm = static_cast<double>(dir.g_norm);
  info.report = stopping_report(dir, h.epsilon_stop, h.eta_th);
  return info;
}

/// Dispatches on state.kind.
template <typename Scalar>
StepInfo step(OptimizerState<Scalar>& state, VectorX<Scalar>& theta, const VectorX<Scalar>& g) {
  switch (state.kind) {
    case OptimizerKind::sgd: return step_sgd(state, theta, g);
    case OptimizerKind::polyak: return step_polyak(state, theta, g);
    case OptimizerKind::adam: return step_adam(state, theta, g);
    case OptimizerKind::adamw: return step_adamw(state, theta, g);
    case OptimizerKind::scsadamw: return step_scsadamw(state, theta, g);
  }
  throw std::logic_error("unknown optimizer kind");
}

}  // namespace scs

#pragma once

#include "scs/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scs {

/**
 * Weight of `g` in the minimal-norm point of the segment [d_prev, g].
 *
 * Minimises ||(1 - lambda) d_prev + lambda g||^2 over lambda in [0, 1]:
 *
 *     lambda* = clamp((||d||^2 - <d, g>) / ||d - g||^2, 0, 1)
 *
 * When the endpoints coincide (||d - g||^2 below 1e-300) every lambda gives
 * the same point and 1 is returned, which keeps the fresh subgradient.
 */
template <typename DerivedD, typename DerivedG>
typename DerivedD::Scalar lambda_star(const Eigen::MatrixBase<DerivedD>& d_prev,
                                      const Eigen::MatrixBase<DerivedG>& g) {
  using Scalar = typename DerivedD::Scalar;
  if (d_prev.size() != g.size()) throw std::invalid_argument("lambda_star: length mismatch");
  const Scalar tiny = std::max<Scalar>(static_cast<Scalar>(1e-300), std::numeric_limits<Scalar>::min());
  const Scalar denom = (d_prev - g).squaredNorm();
  if (denom < tiny) return Scalar(1);
  const Scalar numer = d_prev.squaredNorm() - d_prev.dot(g);
  return std::clamp(numer / denom, Scalar(0), Scalar(1));
}

/// Rule used by `update_direction` to pick the combination weight.
struct MinimalNormRule {
  template <typename DerivedD, typename DerivedG>
  typename DerivedD::Scalar operator()(const Eigen::MatrixBase<DerivedD>& d_prev,
                                       const Eigen::MatrixBase<DerivedG>& g) const {
    return lambda_star(d_prev, g);
  }
};

/// lambda -> sigmoid(clip(lambda*, -5, 5)). Experimental smoothing; maps
/// [0, 1] into roughly [0.5, 0.731].
struct SmoothedRule {
  template <typename DerivedD, typename DerivedG>
  typename DerivedD::Scalar operator()(const Eigen::MatrixBase<DerivedD>& d_prev,
                                       const Eigen::MatrixBase<DerivedG>& g) const {
    using Scalar = typename DerivedD::Scalar;
    const Scalar x = std::clamp(lambda_star(d_prev, g), Scalar(-5), Scalar(5));
    return Scalar(1) / (Scalar(1) + std::exp(-x));
  }
};

/// Always combines with a fixed weight. lambda = 1 gives back the plain
/// subgradient direction.
template <typename Scalar>
struct FixedRule {
  Scalar lambda;
  template <typename DerivedD, typename DerivedG>
  Scalar operator()(const Eigen::MatrixBase<DerivedD>&, const Eigen::MatrixBase<DerivedG>&) const {
    return lambda;
  }
};

/// Previous search direction plus, in verification mode, the convex weights
/// w_1..w_t with d = sum_i w_i g_i over every subgradient seen so far.
template <typename Scalar = double>
class DirectionState {
 public:
  explicit DirectionState(bool track_weights = false) : track_weights_(track_weights) {}

  /// Number of subgradients absorbed so far.
  long step() const { return step_; }
  bool empty() const { return !has_direction_; }
  /// Current direction (d_t after the latest update).
  const VectorX<Scalar>& direction() const { return direction_; }
  bool tracking() const { return track_weights_; }
  const std::vector<Scalar>& weights() const { return weights_; }

  /// The next update restarts from the incoming subgradient. The step count
  /// keeps running.
  void restart() { restart_pending_ = has_direction_; }

 private:
  template <typename S, typename Derived, typename Rule>
  friend struct DirectionUpdater;

  VectorX<Scalar> direction_;
  std::vector<Scalar> weights_;
  long step_ = 0;
  bool has_direction_ = false;
  bool restart_pending_ = false;
  bool track_weights_ = false;
};

/// Norms and inner products around one direction update. Everything needed
/// for the stationarity report.
template <typename Scalar = double>
struct DirectionStep {
  VectorX<Scalar> d;
  Scalar lambda = 1;
  Scalar d_norm = 0;
  Scalar g_norm = 0;
  /// Absent on the first step and right after a restart.
  bool has_prev = false;
  Scalar prev_norm = 0;
  Scalar g_dot_prev = 0;
};

template <typename Scalar, typename Derived, typename Rule>
struct DirectionUpdater {
  static DirectionStep<Scalar> apply(DirectionState<Scalar>& state, const Eigen::MatrixBase<Derived>& g,
                                     const Rule& rule) {
    DirectionStep<Scalar> out;
    out.g_norm = g.norm();
    const bool first = !state.has_direction_ || state.restart_pending_;
    if (!first && g.size() != state.direction_.size()) {
      throw std::invalid_argument("update_direction: subgradient length " + std::to_string(g.size()) +
                                  " does not match direction length " + std::to_string(state.direction_.size()));
    }
    if (first) {
      out.lambda = Scalar(1);
      state.direction_ = g;
      if (state.track_weights_) {
        std::fill(state.weights_.begin(), state.weights_.end(), Scalar(0));
        state.weights_.push_back(Scalar(1));
      }
    } else {
      const VectorX<Scalar>& prev = state.direction_;
      out.has_prev = true;
      out.prev_norm = prev.norm();
      out.g_dot_prev = prev.dot(g);
      out.lambda = rule(prev, g);
      const Scalar keep = Scalar(1) - out.lambda;
      VectorX<Scalar> next = keep * prev + out.lambda * g;
      state.direction_ = std::move(next);
      if (state.track_weights_) {
        for (Scalar& w : state.weights_) w *= keep;
        state.weights_.push_back(out.lambda);
      }
    }
    state.has_direction_ = true;
    state.restart_pending_ = false;
    ++state.step_;
    out.d = state.direction_;
    out.d_norm = out.d.norm();
    return out;
  }
};

/**
 * Absorbs subgradient `g` into the direction:
 *
 *     d_1 = g_1                                  (reported lambda = 1)
 *     d_t = (1 - lambda) d_{t-1} + lambda g_t     (t > 1)
 *
 * with lambda from `rule` (minimal-norm by default). Throws
 * std::invalid_argument on a length mismatch and leaves the state untouched.
 */
template <typename Scalar, typename Derived, typename Rule = MinimalNormRule>
DirectionStep<Scalar> update_direction(DirectionState<Scalar>& state, const Eigen::MatrixBase<Derived>& g,
                                       const Rule& rule = Rule{}) {
  return DirectionUpdater<Scalar, Derived, Rule>::apply(state, g, rule);
}

/// Reconstructs sum_i w_i g_i from tracked weights and the subgradient history.
template <typename Scalar>
VectorX<Scalar> reconstruct(const std::vector<Scalar>& weights, const std::vector<VectorX<Scalar>>& history) {
  if (weights.size() != history.size() || history.empty()) {
    throw std::invalid_argument("reconstruct: weights and history differ in length");
  }
  VectorX<Scalar> out = VectorX<Scalar>::Zero(history.front().size());
  for (std::size_t i = 0; i < weights.size(); ++i) out += weights[i] * history[i];
  return out;
}

/// Quantities of the stationarity certificate at one step.
struct StoppingReport {
  double d_norm = 0;
  double g_norm = 0;
  double lambda_star = 1;
  /// ||d_t|| <= eps, ||d_{t-1}|| > sqrt(1 + eta_th) eps and <g_t, d_{t-1}> >= 0.
  bool certificate_applicable = false;
  /// sqrt(1 + 1 / eta_th) * eps
  double certificate_bound = 0;
  /// Set when the certificate applies but ||g_t|| exceeds the bound. Never
  /// expected; indicates a bug upstream.
  bool certificate_violated = false;
  bool stop = false;  // ||d_t|| <= eps
};

inline StoppingReport stopping_report(double d_norm, double g_norm, double lambda, bool has_prev,
                                      double prev_norm, double g_dot_prev, double epsilon, double eta_th) {
  if (!(epsilon > 0) || !(eta_th > 0)) throw std::invalid_argument("stopping_report: epsilon and eta_th must be positive");
  StoppingReport r;
  r.d_norm = d_norm;
  r.g_norm = g_norm;
  r.lambda_star = lambda;
  r.stop = d_norm <= epsilon;
  r.certificate_bound = std::sqrt(1.0 + 1.0 / eta_th) * epsilon;
  r.certificate_applicable =
      has_prev && d_norm <= epsilon && prev_norm > std::sqrt(1.0 + eta_th) * epsilon && g_dot_prev >= 0.0;
  r.certificate_violated = r.certificate_applicable && g_norm > r.certificate_bound;
  return r;
}

template <typename Scalar>
StoppingReport stopping_report(const DirectionStep<Scalar>& step, double epsilon, double eta_th) {
  return stopping_report(static_cast<double>(step.d_norm), static_cast<double>(step.g_norm),
                         static_cast<double>(step.lambda), step.has_prev, static_cast<double>(step.prev_norm),
                         static_cast<double>(step.g_dot_prev), epsilon, eta_th);
}

/// (1 + 1/eta) l^2 + (1 + eta)(1 - l)^2 - 1, expanded. Its discriminant is zero
/// and it vanishes at l = eta / (1 + eta).
inline double p_lambda(double lambda, double eta_th) {
  if (!(eta_th > 0)) throw std::invalid_argument("p_lambda: eta must be positive");
  return (2.0 + 1.0 / eta_th + eta_th) * lambda * lambda - 2.0 * (1.0 + eta_th) * lambda + eta_th;
}

}  // namespace scs

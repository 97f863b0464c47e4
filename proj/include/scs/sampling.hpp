#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace scs {

/**
 * Sample size that makes a mean of N losses bounded by M land within
 * kappa * delta^2 / 2 of its expectation with probability 1 - eps_conf:
 *
 *     N = max(1, ceil(-8 ln(eps_conf / 2) (M + 1)^2 / (kappa^2 delta^4)))
 *
 * Throws std::invalid_argument unless 0 < eps_conf < 1, kappa > 0,
 * delta > 0 and m_bound >= 0.
 */
std::size_t required_sample_size(double eps_conf, double m_bound, double kappa, double delta);

/// n indices drawn uniformly with replacement from [0, dataset_size).
/// Deterministic in `seed`.
std::vector<std::size_t> draw_batch(std::size_t dataset_size, std::size_t n, std::uint64_t seed);

struct SamplePlan {
  std::size_t n_t = 1;
  double delta_t = 1.0;
  double delta_min = 0.1;
  double kappa = 8.0;
  double m_bound = 0.0;
  double eps_conf = 0.1;
  double lipschitz_est = 0.0;
  /// kappa > 4 lipschitz_est / delta_min at the latest update.
  bool kappa_ok = true;
};

/// Throws if the plan's constants are out of range or kappa does not exceed
/// 4 lipschitz_est / delta_min.
SamplePlan make_plan(double eps_conf, double kappa, double delta0, double delta_min, double m_bound = 0.0,
                     double lipschitz_est = 0.0);

/// Running maxima of |loss| and |loss change| / ||displacement||. A violated
/// kappa hypothesis is flagged on the plan, not thrown.
SamplePlan update_estimates(SamplePlan plan, double observed_loss, double displacement_norm, double loss_change);

/// Fraction of Monte-Carlo trials in which the mean of N = required_sample_size
/// i.i.d. Uniform[-M, M] draws lands within kappa delta^2 / 2 of zero.
double verify_concentration(double m_bound, double kappa, double delta, double eps_conf, std::size_t trials,
                            std::uint64_t seed);

/// Same check with the per-trial sample size forced to `n`.
double verify_concentration_with(std::size_t n, double m_bound, double kappa, double delta, std::size_t trials,
                                 std::uint64_t seed);

struct SamplerConfig {
  bool adaptive = false;
  std::size_t batch = 16;  // fixed mode
  double eps_conf = 0.1;
  double kappa = 8.0;
  double delta0 = 1.0;
  /// Geometric factor gamma for delta_t = max(delta_min, gamma delta_{t-1});
  /// 1 keeps delta constant.
  double delta_decay = 1.0;
  double delta_min = 0.1;
  /// n_t is capped at dataset_size * cap_multiplier.
  double cap_multiplier = 1.0;

  void validate() const;
};

struct Draw {
  std::vector<std::size_t> indices;
  bool capped = false;
};

/// Per-run batch source: fixed-size mini-batches or adaptive sizes from the
/// concentration bound.
class Sampler {
 public:
  Sampler(SamplerConfig config, std::size_t dataset_size, std::uint64_t seed);

  /// Draws the batch for step t (1-based). Advances delta for the next step.
  Draw next(long t);
  /// Feeds back what happened at the step just taken.
  void observe(double loss, double displacement_norm, double loss_change);

  const SamplePlan& plan() const { return plan_; }
  const SamplerConfig& config() const { return config_; }

 private:
  SamplerConfig config_;
  std::size_t dataset_size_;
  std::uint64_t seed_;
  SamplePlan plan_;
};

}  // namespace scs

#include "scs/sampling.hpp"

#include "scs/types.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace scs {

std::size_t required_sample_size(double eps_conf, double m_bound, double kappa, double delta) {
  if (!(eps_conf > 0 && eps_conf < 1)) throw std::invalid_argument("sample size: eps_conf must lie in (0, 1)");
  if (!(kappa > 0) || !std::isfinite(kappa)) throw std::invalid_argument("sample size: kappa must be positive");
  if (!(delta > 0) || !std::isfinite(delta)) throw std::invalid_argument("sample size: delta must be positive");
  if (!(m_bound >= 0) || !std::isfinite(m_bound)) throw std::invalid_argument("sample size: M must be non-negative");
  const double spread = (m_bound + 1.0) * (m_bound + 1.0);
  const double n = -8.0 * std::log(eps_conf / 2.0) * spread / (kappa * kappa * std::pow(delta, 4));
  if (!(n > 1.0)) return 1;
  if (n >= 1e18) throw std::invalid_argument("sample size: bound exceeds representable count");
  return static_cast<std::size_t>(std::ceil(n));
}

std::vector<std::size_t> draw_batch(std::size_t dataset_size, std::size_t n, std::uint64_t seed) {
  if (dataset_size == 0) throw std::invalid_argument("draw_batch: empty dataset");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, dataset_size - 1);
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = pick(rng);
  return out;
}

SamplePlan make_plan(double eps_conf, double kappa, double delta0, double delta_min, double m_bound,
                     double lipschitz_est) {
  if (!(delta_min > 0) || !(delta0 >= delta_min)) {
    throw std::invalid_argument("sample plan: need 0 < delta_min <= delta0");
  }
  SamplePlan plan;
  plan.eps_conf = eps_conf;
  plan.kappa = kappa;
  plan.delta_t = delta0;
  plan.delta_min = delta_min;
  plan.m_bound = m_bound;
  plan.lipschitz_est = lipschitz_est;
  if (!(kappa > 4.0 * lipschitz_est / delta_min)) {
    throw std::invalid_argument("sample plan: kappa = " + std::to_string(kappa) +
                                " must exceed 4 L_f / delta_min = " + std::to_string(4.0 * lipschitz_est / delta_min));
  }
  plan.n_t = required_sample_size(eps_conf, m_bound, kappa, delta0);
  return plan;
}

SamplePlan update_estimates(SamplePlan plan, double observed_loss, double displacement_norm, double loss_change) {
  plan.m_bound = std::max(plan.m_bound, std::abs(observed_loss));
  if (displacement_norm > 0) {
    plan.lipschitz_est =
        std::max(plan.lipschitz_est, std::abs(loss_change) / std::max(displacement_norm, 1e-12));
  }
  plan.kappa_ok = plan.kappa > 4.0 * plan.lipschitz_est / plan.delta_min;
  return plan;
}

double verify_concentration_with(std::size_t n, double m_bound, double kappa, double delta, std::size_t trials,
                                 std::uint64_t seed) {
  if (trials == 0 || n == 0) throw std::invalid_argument("verify_concentration: need trials and samples");
  const double tolerance = 0.5 * kappa * delta * delta;
  std::size_t covered = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(mix_seed(seed, trial));
    std::uniform_real_distribution<double> loss(-m_bound, m_bound);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += m_bound > 0 ? loss(rng) : 0.0;
    if (std::abs(total / static_cast<double>(n)) <= tolerance) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(trials);
}

double verify_concentration(double m_bound, double kappa, double delta, double eps_conf, std::size_t trials,
                            std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("verify_concentration: need at least 100 trials");
  return verify_concentration_with(required_sample_size(eps_conf, m_bound, kappa, delta), m_bound, kappa, delta,
                                   trials, seed);
}

void SamplerConfig::validate() const {
  if (!adaptive && batch == 0) throw std::invalid_argument("sampler: batch size must be at least 1");
  if (adaptive) {
    if (!(eps_conf > 0 && eps_conf < 1)) throw std::invalid_argument("sampler: eps-conf must lie in (0, 1)");
    if (!(kappa > 0)) throw std::invalid_argument("sampler: kappa must be positive");
    if (!(delta_min > 0) || !(delta0 >= delta_min)) throw std::invalid_argument("sampler: need 0 < delta_min <= delta0");
    if (!(delta_decay > 0 && delta_decay <= 1)) throw std::invalid_argument("sampler: delta-decay must lie in (0, 1]");
    if (!(cap_multiplier > 0)) throw std::invalid_argument("sampler: cap multiplier must be positive");
  }
}

Sampler::Sampler(SamplerConfig config, std::size_t dataset_size, std::uint64_t seed)
    : config_(config), dataset_size_(dataset_size), seed_(seed) {
  config_.validate();
  if (dataset_size_ == 0) throw std::invalid_argument("sampler: empty dataset");
  if (config_.adaptive) {
    plan_ = make_plan(config_.eps_conf, config_.kappa, config_.delta0, config_.delta_min);
  } else {
    plan_.n_t = config_.batch;
  }
}

Draw Sampler::next(long t) {
  Draw draw;
  std::size_t n = plan_.n_t;
  if (config_.adaptive) {
    n = required_sample_size(plan_.eps_conf, plan_.m_bound, plan_.kappa, plan_.delta_t);
    const auto cap = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(static_cast<double>(dataset_size_) * config_.cap_multiplier)));
    if (n > cap) {
      n = cap;
      draw.capped = true;
    }
    plan_.n_t = n;
  }
  draw.indices = draw_batch(dataset_size_, n, mix_seed(seed_, static_cast<std::uint64_t>(t)));
  if (config_.adaptive) plan_.delta_t = std::max(plan_.delta_min, config_.delta_decay * plan_.delta_t);
  return draw;
}

void Sampler::observe(double loss, double displacement_norm, double loss_change) {
  if (config_.adaptive) plan_ = update_estimates(plan_, loss, displacement_norm, loss_change);
}

}  // namespace scs

#include "scs/optim.hpp"

#include <array>
#include <utility>

namespace scs {
namespace {

constexpr std::array<std::pair<OptimizerKind, std::string_view>, 5> kNames{{
    {OptimizerKind::sgd, "sgd"},
    {OptimizerKind::polyak, "polyak"},
    {OptimizerKind::adam, "adam"},
    {OptimizerKind::adamw, "adamw"},
    {OptimizerKind::scsadamw, "scsadamw"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid hyperparameter: ") + what);
}

}  // namespace

std::string_view to_string(OptimizerKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

OptimizerKind parse_optimizer(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown optimizer '" + std::string(name) +
                              "' (expected sgd, polyak, adam, adamw or scsadamw)");
}

void HyperParams::validate() const {
  require(std::isfinite(eta) && eta > 0, "learning rate must be positive");
  require(beta1 >= 0 && beta1 < 1, "beta1 must lie in [0, 1)");
  require(beta2 >= 0 && beta2 < 1, "beta2 must lie in [0, 1)");
  require(std::isfinite(lambda_wd) && lambda_wd >= 0, "weight decay must be non-negative");
  require(std::isfinite(zeta) && zeta > 0, "zeta must be positive");
  require(std::isfinite(epsilon_stop) && epsilon_stop > 0, "stopping threshold must be positive");
  require(theta_momentum >= 0 && theta_momentum < 1, "momentum must lie in [0, 1)");
  require(std::isfinite(eta_th) && eta_th > 0, "eta_th must be positive");
  require(!restart_period || *restart_period > 0, "restart period must be positive");
  require(!fixed_lambda || (*fixed_lambda >= 0 && *fixed_lambda <= 1), "fixed lambda must lie in [0, 1]");
}

}  // namespace scs

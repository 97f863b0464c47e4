#include "scs/autodiff/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scs::ad {

double grad_check(const Graph& graph, std::span<const Tensor> params, double fd_step) {
  if (!(fd_step > 0)) throw std::invalid_argument("grad_check: fd step must be positive");
  ForwardResult fwd = forward(graph, params);
  const std::vector<Tensor> analytic = backward(fwd.tape);

  std::vector<Tensor> probe(params.begin(), params.end());
  auto loss_with = [&](std::size_t p, std::size_t i, double value) {
    Eigen::VectorXd data = params[p].flat();
    data[static_cast<Eigen::Index>(i)] = value;
    probe[p] = Tensor(params[p].shape(), std::move(data));
    const double loss = forward(graph, probe).loss;
    probe[p] = params[p];
    return loss;
  };

  double worst = 0.0;
  for (std::size_t p = 0; p < params.size(); ++p) {
    for (std::size_t i = 0; i < params[p].size(); ++i) {
      const double x = params[p][i];
      const double fd = (loss_with(p, i, x + fd_step) - loss_with(p, i, x - fd_step)) / (2.0 * fd_step);
      const double err = std::abs(analytic[p][i] - fd) / std::max(1.0, std::abs(fd));
      if (!std::isfinite(err)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace scs::ad

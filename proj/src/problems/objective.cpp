#include "scs/problems/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace scs {

double Objective::loss(const Vector& theta, std::span<const std::size_t> batch) const {
  return evaluate(theta, batch).loss;
}

double Objective::full_loss(const Vector& theta) const {
  const std::vector<std::size_t> all = all_indices();
  return loss(theta, all);
}

std::vector<std::size_t> Objective::all_indices() const {
  std::vector<std::size_t> out(dataset_size());
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

ParamLayout::ParamLayout(std::vector<ad::Shape> shapes) : shapes_(std::move(shapes)) {
  for (const auto& s : shapes_) {
    offsets_.push_back(total_);
    total_ += ad::shape_size(s);
  }
}

std::vector<ad::Tensor> ParamLayout::unflatten(const Vector& theta) const {
  if (static_cast<std::size_t>(theta.size()) != total_) {
    throw std::invalid_argument("parameter vector of length " + std::to_string(theta.size()) + ", expected " +
                                std::to_string(total_));
  }
  std::vector<ad::Tensor> out;
  out.reserve(shapes_.size());
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    const auto n = static_cast<Eigen::Index>(ad::shape_size(shapes_[i]));
    out.emplace_back(shapes_[i], Eigen::VectorXd(theta.segment(static_cast<Eigen::Index>(offsets_[i]), n)));
  }
  return out;
}

Vector ParamLayout::flatten(std::span<const ad::Tensor> tensors) const {
  if (tensors.size() != shapes_.size()) throw std::invalid_argument("flatten: tensor count mismatch");
  Vector out(static_cast<Eigen::Index>(total_));
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    if (tensors[i].shape() != shapes_[i]) {
      throw std::invalid_argument("flatten: tensor " + std::to_string(i) + " has shape " +
                                  ad::shape_string(tensors[i].shape()) + ", expected " + ad::shape_string(shapes_[i]));
    }
    out.segment(static_cast<Eigen::Index>(offsets_[i]), tensors[i].flat().size()) = tensors[i].flat();
  }
  return out;
}

ad::Graph TapeObjective::graph(std::vector<std::size_t> batch) const {
  return [this, batch = std::move(batch)](ad::Tape& tape, std::span<const ad::Var> params) {
    return build(tape, params, batch);
  };
}

Evaluation TapeObjective::evaluate(const Vector& theta, std::span<const std::size_t> batch) const {
  if (batch.empty()) throw std::invalid_argument(name() + ": empty batch");
  const std::vector<ad::Tensor> params = layout_.unflatten(theta);
  ad::ForwardResult fwd = ad::forward(graph({batch.begin(), batch.end()}), params);
  const std::vector<ad::Tensor> grads = ad::backward(fwd.tape);
  return Evaluation{fwd.loss, layout_.flatten(grads)};
}

double TapeObjective::loss(const Vector& theta, std::span<const std::size_t> batch) const {
  if (batch.empty()) throw std::invalid_argument(name() + ": empty batch");
  const std::vector<ad::Tensor> params = layout_.unflatten(theta);
  return ad::forward(graph({batch.begin(), batch.end()}), params).loss;
}

double grad_check(const Objective& objective, const Vector& theta, std::span<const std::size_t> batch,
                  double fd_step) {
  if (!(fd_step > 0)) throw std::invalid_argument("grad_check: fd step must be positive");
  const Vector analytic = objective.evaluate(theta, batch).gradient;
  Vector probe = theta;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + fd_step;
    const double up = objective.loss(probe, batch);
    probe[i] = theta[i] - fd_step;
    const double down = objective.loss(probe, batch);
    probe[i] = theta[i];
    const double fd = (up - down) / (2.0 * fd_step);
    const double err = std::abs(analytic[i] - fd) / std::max(1.0, std::abs(fd));
    if (!std::isfinite(err)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace scs

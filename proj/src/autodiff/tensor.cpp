#include "scs/autodiff/tensor.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scs::ad {

std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string shape_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ", ";
    out << shape[i];
  }
  out << ']';
  return out.str();
}

Tensor::Tensor(Shape shape, Eigen::VectorXd data) : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.size() > 2) {
    throw std::invalid_argument("tensor rank above 2 is not supported: " + shape_string(shape_));
  }
  if (shape_size(shape_) != size()) {
    throw std::invalid_argument("tensor shape " + shape_string(shape_) + " does not match " +
                                std::to_string(size()) + " values");
  }
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : Tensor(std::move(shape), Eigen::Map<const Eigen::VectorXd>(
                                   data.data(), static_cast<Eigen::Index>(data.size()))) {}

Tensor Tensor::zeros(Shape shape) {
  const auto n = static_cast<Eigen::Index>(shape_size(shape));
  return Tensor(std::move(shape), Eigen::VectorXd::Zero(n));
}

Tensor Tensor::scalar(double value) {
  Eigen::VectorXd data(1);
  data[0] = value;
  return Tensor(Shape{}, std::move(data));
}

Tensor Tensor::from_matrix(const Eigen::Ref<const RowMatrix>& m) {
  Eigen::VectorXd data(m.size());
  Eigen::Map<RowMatrix>(data.data(), m.rows(), m.cols()) = m;
  return Tensor(Shape{static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())},
                std::move(data));
}

Tensor Tensor::row(std::initializer_list<double> values) {
  return Tensor(Shape{values.size()}, std::vector<double>(values));
}

std::size_t Tensor::rows() const { return shape_.size() == 2 ? shape_[0] : 1; }

std::size_t Tensor::cols() const {
  switch (shape_.size()) {
    case 0: return 1;
    case 1: return shape_[0];
    default: return shape_[1];
  }
}

double Tensor::item() const {
  if (size() != 1) {
    throw std::invalid_argument("item() on tensor of shape " + shape_string(shape_));
  }
  return data_[0];
}

}  // namespace scs::ad

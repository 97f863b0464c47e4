#pragma once

#include "scs/types.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace scs::ad {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

/// Dense fp64 array in row-major order. Immutable once constructed.
///
/// Rank-0 and rank-1 tensors are viewed as a single row when a matrix view is
/// needed, so `[n]` behaves like `[1, n]` under `matrix()`.
class Tensor {
 public:
  using ConstMatrixMap = Eigen::Map<const RowMatrix>;

  Tensor() : Tensor(Shape{0}, Eigen::VectorXd()) {}
  Tensor(Shape shape, Eigen::VectorXd data);
  Tensor(Shape shape, std::vector<double> data);

  static Tensor zeros(Shape shape);
  static Tensor scalar(double value);
  static Tensor from_matrix(const Eigen::Ref<const RowMatrix>& m);
  static Tensor row(std::initializer_list<double> values);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(data_.size()); }
  std::size_t rows() const;
  std::size_t cols() const;

  ConstMatrixMap matrix() const {
    return ConstMatrixMap(data_.data(), static_cast<Eigen::Index>(rows()),
                          static_cast<Eigen::Index>(cols()));
  }
  const Eigen::VectorXd& flat() const { return data_; }
  std::span<const double> values() const { return {data_.data(), size()}; }

  double operator[](std::size_t i) const { return data_[static_cast<Eigen::Index>(i)]; }
  /// Value of a single-element tensor.
  double item() const;
  bool all_finite() const { return data_.allFinite(); }

 private:
  Shape shape_;
  Eigen::VectorXd data_;
};

}  // namespace scs::ad

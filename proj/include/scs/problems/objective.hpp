#pragma once

#include "scs/autodiff/tape.hpp"
#include "scs/types.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace scs {

enum class Smoothness { smooth, nonsmooth };

struct Evaluation {
  double loss = 0;
  Vector gradient;
};

/// A loss over a finite dataset with parameters flattened into one vector.
/// `evaluate` returns the mean per-example loss over `batch` (indices may
/// repeat) and its (sub)gradient. Implementations are immutable and safe to
/// evaluate concurrently.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::size_t dataset_size() const = 0;
  /// Examples that make up one pass over the data.
  virtual std::size_t examples_per_epoch() const { return dataset_size(); }
  virtual Smoothness smoothness() const = 0;
  virtual Vector initial_point() const = 0;

  virtual Evaluation evaluate(const Vector& theta, std::span<const std::size_t> batch) const = 0;
  virtual double loss(const Vector& theta, std::span<const std::size_t> batch) const;
  /// Loss over the whole dataset.
  virtual double full_loss(const Vector& theta) const;

  std::vector<std::size_t> all_indices() const;
};

/// Parameter shapes packed back to back into one flat vector.
class ParamLayout {
 public:
  ParamLayout() = default;
  explicit ParamLayout(std::vector<ad::Shape> shapes);

  std::size_t total() const { return total_; }
  std::size_t count() const { return shapes_.size(); }
  const ad::Shape& shape(std::size_t i) const { return shapes_[i]; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }

  std::vector<ad::Tensor> unflatten(const Vector& theta) const;
  Vector flatten(std::span<const ad::Tensor> tensors) const;

 private:
  std::vector<ad::Shape> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Objective whose loss is a tape graph over the unflattened parameters;
/// gradients come from reverse-mode differentiation.
class TapeObjective : public Objective {
 public:
  std::size_t dimension() const override { return layout_.total(); }
  Evaluation evaluate(const Vector& theta, std::span<const std::size_t> batch) const override;
  double loss(const Vector& theta, std::span<const std::size_t> batch) const override;

  /// The mean loss over `batch` as a differentiable graph.
  virtual ad::Var build(ad::Tape& tape, std::span<const ad::Var> params,
                        std::span<const std::size_t> batch) const = 0;

  /// Graph with the batch bound in, for use with ad::forward / ad::grad_check.
  ad::Graph graph(std::vector<std::size_t> batch) const;
  const ParamLayout& layout() const { return layout_; }

 protected:
  explicit TapeObjective(ParamLayout layout) : layout_(std::move(layout)) {}

 private:
  ParamLayout layout_;
};

/// Central-difference check of `evaluate`'s gradient against `loss`. Same
/// error measure as ad::grad_check.
double grad_check(const Objective& objective, const Vector& theta, std::span<const std::size_t> batch,
                  double fd_step);

}  // namespace scs

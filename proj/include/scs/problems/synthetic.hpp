#pragma once

#include "scs/problems/objective.hpp"

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace scs {

/// sign(c) * max(|c| - tau, 0), the minimiser of tau ||x||_1 + 1/2 ||x - c||^2.
Vector soft_threshold(const Vector& c, double tau);

// Dataset-backed synthetic problems. Except for the hinge loss, example i
// adds a linear term <e_i, x> to a fixed objective; the rows e_i come in
// +/- pairs so the full-dataset mean equals the fixed objective.

/// ||x||_1 + 1/2 ||x - c||^2 (+ <e_i, x>). Minimiser soft_threshold(c, 1).
class L1Quadratic final : public TapeObjective {
 public:
  L1Quadratic(Vector center, RowMatrix perturbations);

  std::string name() const override { return "l1-quadratic"; }
  std::size_t dataset_size() const override { return static_cast<std::size_t>(perturbations_.rows()); }
  Smoothness smoothness() const override { return Smoothness::nonsmooth; }
  Vector initial_point() const override { return Vector::Zero(center_.size()); }
  ad::Var build(ad::Tape& tape, std::span<const ad::Var> params, std::span<const std::size_t> batch) const override;

  const Vector& center() const { return center_; }
  Vector minimizer() const { return soft_threshold(center_, 1.0); }

 private:
  Vector center_;
  RowMatrix perturbations_;
};

/// 1/2 x^T A x - b^T x (+ <e_i, x>) with A symmetric positive definite.
class Quadratic final : public TapeObjective {
 public:
  Quadratic(RowMatrix a, Vector b, RowMatrix perturbations);

  std::string name() const override { return "quadratic"; }
  std::size_t dataset_size() const override { return static_cast<std::size_t>(perturbations_.rows()); }
  Smoothness smoothness() const override { return Smoothness::smooth; }
  Vector initial_point() const override { return Vector::Zero(b_.size()); }
  ad::Var build(ad::Tape& tape, std::span<const ad::Var> params, std::span<const std::size_t> batch) const override;

  Vector minimizer() const;

 private:
  RowMatrix a_;
  Vector b_;
  RowMatrix perturbations_;
};

/// Mean of max(0, 1 - y_i <w, x_i>). At margin exactly 1 the subgradient is
/// taken from the active side, -y_i x_i.
class HingeSvm final : public TapeObjective {
 public:
  HingeSvm(RowMatrix features, Vector labels);

  std::string name() const override { return "hinge-svm"; }
  std::size_t dataset_size() const override { return static_cast<std::size_t>(features_.rows()); }
  Smoothness smoothness() const override { return Smoothness::nonsmooth; }
  Vector initial_point() const override { return Vector::Zero(features_.cols()); }
  ad::Var build(ad::Tape& tape, std::span<const ad::Var> params, std::span<const std::size_t> batch) const override;

 private:
  RowMatrix features_;
  Vector labels_;
};

/// sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2 (+ <e_i, x>).
class Rosenbrock final : public TapeObjective {
 public:
  explicit Rosenbrock(RowMatrix perturbations);

  std::string name() const override { return "rosenbrock"; }
  std::size_t dataset_size() const override { return static_cast<std::size_t>(perturbations_.rows()); }
  Smoothness smoothness() const override { return Smoothness::smooth; }
  Vector initial_point() const override;
  ad::Var build(ad::Tape& tape, std::span<const ad::Var> params, std::span<const std::size_t> batch) const override;

 private:
  RowMatrix perturbations_;
};

inline constexpr std::size_t kSyntheticExamples = 200;

const std::vector<std::string_view>& synthetic_names();

/// Seeded instance of one of l1-quadratic, hinge-svm, quadratic, rosenbrock.
/// Throws std::invalid_argument for an unknown name.
std::unique_ptr<TapeObjective> synthetic_objective(std::string_view name, std::size_t dimension, std::uint64_t seed);

}  // namespace scs

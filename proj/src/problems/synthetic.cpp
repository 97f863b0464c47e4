#include "scs/problems/synthetic.hpp"

#include "scs/autodiff/ops.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace scs {
namespace {

using ad::Tensor;
using ad::Var;

ad::Shape row_shape(Eigen::Index n) { return ad::Shape{1, static_cast<std::size_t>(n)}; }

void check_batch(std::span<const std::size_t> batch, Eigen::Index rows, const char* who) {
  if (batch.empty()) throw std::invalid_argument(std::string(who) + ": empty batch");
  for (const std::size_t i : batch) {
    if (i >= static_cast<std::size_t>(rows)) {
      throw std::out_of_range(std::string(who) + ": example " + std::to_string(i) + " out of range");
    }
  }
}

// <mean of rows in batch, x> as a tape node.
Var perturbation_term(ad::Tape& tape, Var x, const RowMatrix& rows, std::span<const std::size_t> batch) {
  Vector e = Vector::Zero(rows.cols());
  for (const std::size_t i : batch) e += rows.row(static_cast<Eigen::Index>(i)).transpose();
  e /= static_cast<double>(batch.size());
  const Var c = tape.constant(Tensor(row_shape(e.size()), Eigen::VectorXd(e)), "perturbation");
  return ad::sum(ad::mul(c, x));
}

RowMatrix paired_noise(std::mt19937_64& rng, std::size_t examples, Eigen::Index dim, double sigma) {
  std::normal_distribution<double> normal(0.0, sigma);
  RowMatrix out(static_cast<Eigen::Index>(examples), dim);
  for (Eigen::Index i = 0; i + 1 < out.rows(); i += 2) {
    for (Eigen::Index j = 0; j < dim; ++j) out(i, j) = normal(rng);
    out.row(i + 1) = -out.row(i);
  }
  return out;
}

Vector normal_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace

Vector soft_threshold(const Vector& c, double tau) {
  return c.unaryExpr([tau](double x) { return x > tau ? x - tau : (x < -tau ? x + tau : 0.0); });
}

L1Quadratic::L1Quadratic(Vector center, RowMatrix perturbations)
    : TapeObjective(ParamLayout({row_shape(center.size())})),
      center_(std::move(center)),
      perturbations_(std::move(perturbations)) {
  if (perturbations_.rows() == 0 || perturbations_.cols() != center_.size()) {
    throw std::invalid_argument("l1-quadratic: perturbation rows must match the dimension");
  }
}

Var L1Quadratic::build(ad::Tape& tape, std::span<const Var> params, std::span<const std::size_t> batch) const {
  check_batch(batch, perturbations_.rows(), "l1-quadratic");
  const Var x = params[0];
  const Var c = tape.constant(Tensor(row_shape(center_.size()), Eigen::VectorXd(center_)), "center");
  const Var l1 = ad::sum(ad::abs(x));
  const Var quad = ad::scale(ad::sum(ad::square(ad::sub(x, c))), 0.5);
  return ad::add(ad::add(l1, quad), perturbation_term(tape, x, perturbations_, batch));
}

Quadratic::Quadratic(RowMatrix a, Vector b, RowMatrix perturbations)
    : TapeObjective(ParamLayout({row_shape(b.size())})),
      a_(std::move(a)),
      b_(std::move(b)),
      perturbations_(std::move(perturbations)) {
  if (a_.rows() != b_.size() || a_.cols() != b_.size()) throw std::invalid_argument("quadratic: A must be n x n");
  if (perturbations_.rows() == 0 || perturbations_.cols() != b_.size()) {
    throw std::invalid_argument("quadratic: perturbation rows must match the dimension");
  }
}

Var Quadratic::build(ad::Tape& tape, std::span<const Var> params, std::span<const std::size_t> batch) const {
  check_batch(batch, perturbations_.rows(), "quadratic");
  const Var x = params[0];
  const Var a = tape.constant(Tensor::from_matrix(a_), "A");
  const Var b = tape.constant(Tensor(row_shape(b_.size()), Eigen::VectorXd(b_)), "b");
  const Var curvature = ad::scale(ad::sum(ad::mul(ad::matmul(x, a), x)), 0.5);
  const Var linear = ad::sum(ad::mul(b, x));
  return ad::add(ad::sub(curvature, linear), perturbation_term(tape, x, perturbations_, batch));
}

Vector Quadratic::minimizer() const { return Eigen::MatrixXd(a_).ldlt().solve(b_); }

HingeSvm::HingeSvm(RowMatrix features, Vector labels)
    : TapeObjective(ParamLayout({ad::Shape{static_cast<std::size_t>(features.cols()), 1}})),
      features_(std::move(features)),
      labels_(std::move(labels)) {
  if (features_.rows() == 0 || features_.rows() != labels_.size()) {
    throw std::invalid_argument("hinge-svm: need one label per example");
  }
}

Var HingeSvm::build(ad::Tape& tape, std::span<const Var> params, std::span<const std::size_t> batch) const {
  check_batch(batch, features_.rows(), "hinge-svm");
  RowMatrix xs(static_cast<Eigen::Index>(batch.size()), features_.cols());
  Eigen::VectorXd ys(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t r = 0; r < batch.size(); ++r) {
    xs.row(static_cast<Eigen::Index>(r)) = features_.row(static_cast<Eigen::Index>(batch[r]));
    ys[static_cast<Eigen::Index>(r)] = labels_[static_cast<Eigen::Index>(batch[r])];
  }
  const Var x = tape.constant(Tensor::from_matrix(xs), "features");
  const Var y = tape.constant(Tensor(ad::Shape{batch.size(), 1}, std::move(ys)), "labels");
  const Var margins = ad::mul(ad::matmul(x, params[0]), y);
  return ad::mean(ad::relu(ad::add_scalar(ad::scale(margins, -1.0), 1.0)));
}

Rosenbrock::Rosenbrock(RowMatrix perturbations)
    : TapeObjective(ParamLayout({row_shape(perturbations.cols())})), perturbations_(std::move(perturbations)) {
  if (perturbations_.rows() == 0 || perturbations_.cols() < 2) {
    throw std::invalid_argument("rosenbrock: need dimension >= 2 and at least one example");
  }
}

Vector Rosenbrock::initial_point() const {
  Vector x(perturbations_.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = i % 2 == 0 ? -1.2 : 1.0;
  return x;
}

Var Rosenbrock::build(ad::Tape& tape, std::span<const Var> params, std::span<const std::size_t> batch) const {
  check_batch(batch, perturbations_.rows(), "rosenbrock");
  const Var x = params[0];
  const auto n = static_cast<std::size_t>(perturbations_.cols());
  const Var head = ad::slice_cols(x, 0, n - 1);
  const Var tail = ad::slice_cols(x, 1, n);
  const Var valley = ad::scale(ad::sum(ad::square(ad::sub(tail, ad::square(head)))), 100.0);
  const Var offset = ad::sum(ad::square(ad::add_scalar(ad::scale(head, -1.0), 1.0)));
  return ad::add(ad::add(valley, offset), perturbation_term(tape, x, perturbations_, batch));
}

const std::vector<std::string_view>& synthetic_names() {
  static const std::vector<std::string_view> names{"l1-quadratic", "hinge-svm", "quadratic", "rosenbrock"};
  return names;
}

std::unique_ptr<TapeObjective> synthetic_objective(std::string_view name, std::size_t dimension, std::uint64_t seed) {
  if (dimension == 0) throw std::invalid_argument("synthetic objective: dimension must be positive");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(dimension);
  if (name == "l1-quadratic") {
    Vector c = normal_vector(rng, n);
    return std::make_unique<L1Quadratic>(std::move(c), paired_noise(rng, kSyntheticExamples, n, 0.5));
  }
  if (name == "quadratic") {
    RowMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = normal_vector(rng, n).transpose();
    RowMatrix a = m.transpose() * m / static_cast<double>(n);
    a.diagonal().array() += 1.0;
    Vector b = normal_vector(rng, n);
    return std::make_unique<Quadratic>(std::move(a), std::move(b), paired_noise(rng, kSyntheticExamples, n, 0.5));
  }
  if (name == "hinge-svm") {
    Vector w = normal_vector(rng, n);
    w.normalize();
    RowMatrix x(static_cast<Eigen::Index>(kSyntheticExamples), n);
    Vector y(static_cast<Eigen::Index>(kSyntheticExamples));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      Vector xi;
      double score = 0.0;
      do {
        xi = normal_vector(rng, n);
        score = w.dot(xi);
      } while (std::abs(score) < 0.1);
      x.row(i) = xi.transpose();
      y[i] = score > 0 ? 1.0 : -1.0;
    }
    return std::make_unique<HingeSvm>(std::move(x), std::move(y));
  }
  if (name == "rosenbrock") {
    if (dimension < 2) throw std::invalid_argument("rosenbrock: dimension must be at least 2");
    return std::make_unique<Rosenbrock>(paired_noise(rng, kSyntheticExamples, n, 0.1));
  }
  throw std::invalid_argument("unknown synthetic objective '" + std::string(name) +
                              "' (expected l1-quadratic, hinge-svm, quadratic or rosenbrock)");
}

}  // namespace scs

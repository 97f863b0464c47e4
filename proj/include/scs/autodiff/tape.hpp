#pragma once

#include "scs/autodiff/tensor.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace scs::ad {

class Tape;

/// Handle to a value recorded on a tape.
struct Var {
  Tape* tape = nullptr;
  std::size_t id = 0;

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
};

/// Reverse-mode differentiation record.
///
/// Nodes are appended in evaluation order, so index order is a topological
/// order and the backward sweep simply walks the node list in reverse. A tape
/// can be swept backward once.
class Tape {
 public:
  /// Accumulates the gradient of the node `self` into its inputs.
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(Tape&&) = default;
  Tape& operator=(Tape&&) = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Registers a differentiable leaf. Gradients come back in registration order.
  Var parameter(Tensor value, std::string label = "param");
  Var constant(Tensor value, std::string label = "const");

  /// Records the result of a primitive. Rejects non-finite values with the
  /// node's identity in the message.
  Var record(std::string_view op, Tensor value, std::vector<std::size_t> inputs, BackwardFn backward);

  const Tensor& value(std::size_t id) const { return nodes_[id].value; }
  const std::string& op(std::size_t id) const { return nodes_[id].op; }
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  std::size_t input(std::size_t id, std::size_t k) const { return nodes_[id].inputs[k]; }

  /// Gradient buffer of a node, allocated (zeroed) on first access.
  Eigen::VectorXd& grad(std::size_t id);
  /// Same storage viewed as a row-major matrix of the node's shape.
  Eigen::Map<RowMatrix> grad_matrix(std::size_t id);

  std::size_t size() const { return nodes_.size(); }
  std::size_t parameter_count() const { return params_.size(); }
  std::span<const std::size_t> parameters() const { return params_; }

  void set_root(Var root);
  bool has_root() const { return has_root_; }
  std::size_t root() const { return root_; }

  bool consumed() const { return consumed_; }

  /// Sweeps backward from `root` (which must be a single-element node) and
  /// returns d root / d parameter for every registered parameter.
  std::vector<Tensor> backward(Var root);
  /// Sweeps backward from the root set via `set_root`.
  std::vector<Tensor> backward();

  /// Nodes visited by the last backward sweep, in visit order. Exposed for
  /// checking the sweep order.
  const std::vector<std::size_t>& visit_log() const { return visit_log_; }

 private:
  struct Node {
    std::string op;
    Tensor value;
    std::vector<std::size_t> inputs;
    BackwardFn backward;
    Eigen::VectorXd grad;
    bool requires_grad = false;
    bool has_grad = false;
  };

  std::vector<Node> nodes_;
  std::vector<std::size_t> params_;
  std::vector<std::size_t> visit_log_;
  std::size_t root_ = 0;
  bool has_root_ = false;
  bool consumed_ = false;
};

/// A loss graph: given the parameter leaves on a fresh tape, builds the loss
/// node. Any batch data is captured by the callable.
using Graph = std::function<Var(Tape&, std::span<const Var>)>;

struct ForwardResult {
  double loss;
  Tape tape;
};

ForwardResult forward(const Graph& graph, std::span<const Tensor> params);

/// One gradient per parameter, same shapes. Consumes the tape.
std::vector<Tensor> backward(Tape& tape);

}  // namespace scs::ad

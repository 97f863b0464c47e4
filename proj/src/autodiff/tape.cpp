#include "scs/autodiff/tape.hpp"

#include <stdexcept>

namespace scs::ad {

const Tensor& Var::value() const { return tape->value(id); }

Var Tape::parameter(Tensor value, std::string label) {
  if (!value.all_finite()) {
    throw NumericalError("non-finite parameter value at node " + std::to_string(nodes_.size()) +
                         " (" + label + ")");
  }
  Node node;
  node.op = std::move(label);
  node.value = std::move(value);
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  params_.push_back(nodes_.size() - 1);
  return Var{this, nodes_.size() - 1};
}

Var Tape::constant(Tensor value, std::string label) {
  Node node;
  node.op = std::move(label);
  node.value = std::move(value);
  nodes_.push_back(std::move(node));
  return Var{this, nodes_.size() - 1};
}

Var Tape::record(std::string_view op, Tensor value, std::vector<std::size_t> inputs,
                 BackwardFn backward) {
  const std::size_t id = nodes_.size();
  if (!value.all_finite()) {
    throw NumericalError("non-finite value produced at node " + std::to_string(id) + " (" +
                         std::string(op) + ")");
  }
  Node node;
  node.op = std::string(op);
  node.value = std::move(value);
  for (const std::size_t in : inputs) node.requires_grad = node.requires_grad || nodes_[in].requires_grad;
  node.inputs = std::move(inputs);
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var{this, id};
}

Eigen::VectorXd& Tape::grad(std::size_t id) {
  Node& node = nodes_[id];
  if (!node.has_grad) {
    node.grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(node.value.size()));
    node.has_grad = true;
  }
  return node.grad;
}

Eigen::Map<RowMatrix> Tape::grad_matrix(std::size_t id) {
  Eigen::VectorXd& g = grad(id);
  const Tensor& v = nodes_[id].value;
  return Eigen::Map<RowMatrix>(g.data(), static_cast<Eigen::Index>(v.rows()),
                               static_cast<Eigen::Index>(v.cols()));
}

void Tape::set_root(Var root) {
  if (root.tape != this) throw std::invalid_argument("root belongs to a different tape");
  root_ = root.id;
  has_root_ = true;
}

std::vector<Tensor> Tape::backward(Var root) {
  if (consumed_) throw std::logic_error("tape already consumed: backward may run once per tape");
  if (root.tape != this) throw std::invalid_argument("root belongs to a different tape");
  if (nodes_[root.id].value.size() != 1) {
    throw std::invalid_argument("backward root at node " + std::to_string(root.id) + " (" +
                                nodes_[root.id].op + ") is not a scalar");
  }
  consumed_ = true;
  visit_log_.clear();
  grad(root.id)[0] = 1.0;
  for (std::size_t i = root.id + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!node.has_grad || !node.backward) continue;
    visit_log_.push_back(i);
    node.backward(*this, i);
  }
  std::vector<Tensor> grads;
  grads.reserve(params_.size());
  for (const std::size_t p : params_) {
    const Node& node = nodes_[p];
    if (node.has_grad) {
      grads.emplace_back(node.value.shape(), node.grad);
    } else {
      grads.push_back(Tensor::zeros(node.value.shape()));
    }
  }
  return grads;
}

std::vector<Tensor> Tape::backward() {
  if (!has_root_) throw std::logic_error("tape has no root; call set_root or backward(root)");
  return backward(Var{this, root_});
}

ForwardResult forward(const Graph& graph, std::span<const Tensor> params) {
  Tape tape;
  std::vector<Var> leaves;
  leaves.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    leaves.push_back(tape.parameter(params[i], "param" + std::to_string(i)));
  }
  const Var loss = graph(tape, leaves);
  tape.set_root(loss);
  const double value = loss.value().item();
  return ForwardResult{value, std::move(tape)};
}

std::vector<Tensor> backward(Tape& tape) { return tape.backward(); }

}  // namespace scs::ad

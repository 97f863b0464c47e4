#include "scs/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scs::ad {
namespace {

using Eigen::Index;

[[noreturn]] void shape_error(const Tape& tape, std::string_view op, const std::string& what) {
  throw std::invalid_argument(std::string(op) + " (node " + std::to_string(tape.size()) + "): " + what);
}

Tape& same_tape(std::string_view op, Var a, Var b) {
  if (a.tape == nullptr || a.tape != b.tape) {
    throw std::invalid_argument(std::string(op) + ": operands live on different tapes");
  }
  return *a.tape;
}

void require_same_shape(const Tape& tape, std::string_view op, Var a, Var b) {
  if (a.shape() != b.shape()) {
    shape_error(tape, op, "shape mismatch " + shape_string(a.shape()) + " vs " + shape_string(b.shape()));
  }
}

Shape matrix_shape(std::size_t rows, std::size_t cols) { return Shape{rows, cols}; }

Tensor make(const Shape& shape, Eigen::VectorXd data) { return Tensor(shape, std::move(data)); }

Eigen::Map<const RowMatrix> as_matrix(const Eigen::VectorXd& v, std::size_t rows, std::size_t cols) {
  return Eigen::Map<const RowMatrix>(v.data(), static_cast<Index>(rows), static_cast<Index>(cols));
}

// Elementwise unary op whose derivative is expressed through input x and output y.
template <typename Forward, typename Derivative>
Var unary(std::string_view op, Var a, Forward f, Derivative df) {
  Tape& tape = *a.tape;
  const Eigen::VectorXd& x = a.value().flat();
  Eigen::VectorXd y = x.unaryExpr(f);
  return tape.record(op, make(a.shape(), std::move(y)), {a.id}, [df](Tape& t, std::size_t self) {
    const std::size_t in = t.input(self, 0);
    if (!t.requires_grad(in)) return;
    const Eigen::VectorXd& xv = t.value(in).flat();
    const Eigen::VectorXd& yv = t.value(self).flat();
    const Eigen::VectorXd& up = t.grad(self);
    Eigen::VectorXd& gi = t.grad(in);
    for (Index i = 0; i < up.size(); ++i) gi[i] += up[i] * df(xv[i], yv[i]);
  });
}

}  // namespace

Var add(Var a, Var b) {
  Tape& tape = same_tape("add", a, b);
  require_same_shape(tape, "add", a, b);
  return tape.record("add", make(a.shape(), a.value().flat() + b.value().flat()), {a.id, b.id},
                     [](Tape& t, std::size_t self) {
                       for (std::size_t k = 0; k < 2; ++k) {
                         const std::size_t in = t.input(self, k);
                         if (t.requires_grad(in)) t.grad(in) += t.grad(self);
                       }
                     });
}

Var sub(Var a, Var b) {
  Tape& tape = same_tape("sub", a, b);
  require_same_shape(tape, "sub", a, b);
  return tape.record("sub", make(a.shape(), a.value().flat() - b.value().flat()), {a.id, b.id},
                     [](Tape& t, std::size_t self) {
                       const std::size_t l = t.input(self, 0);
                       const std::size_t r = t.input(self, 1);
                       if (t.requires_grad(l)) t.grad(l) += t.grad(self);
                       if (t.requires_grad(r)) t.grad(r) -= t.grad(self);
                     });
}

Var mul(Var a, Var b) {
  Tape& tape = same_tape("mul", a, b);
  require_same_shape(tape, "mul", a, b);
  Eigen::VectorXd y = a.value().flat().cwiseProduct(b.value().flat());
  return tape.record("mul", make(a.shape(), std::move(y)), {a.id, b.id}, [](Tape& t, std::size_t self) {
    const std::size_t l = t.input(self, 0);
    const std::size_t r = t.input(self, 1);
    if (t.requires_grad(l)) t.grad(l) += t.grad(self).cwiseProduct(t.value(r).flat());
    if (t.requires_grad(r)) t.grad(r) += t.grad(self).cwiseProduct(t.value(l).flat());
  });
}

Var add_row(Var a, Var b) {
  Tape& tape = same_tape("add_row", a, b);
  const std::size_t rows = a.value().rows();
  const std::size_t cols = a.value().cols();
  if (b.value().size() != cols) {
    shape_error(tape, "add_row", "bias of shape " + shape_string(b.shape()) + " does not match " +
                                     std::to_string(cols) + " columns of " + shape_string(a.shape()));
  }
  Eigen::VectorXd y = a.value().flat();
  Eigen::Map<RowMatrix>(y.data(), static_cast<Index>(rows), static_cast<Index>(cols)).rowwise() +=
      as_matrix(b.value().flat(), 1, cols).row(0);
  return tape.record("add_row", make(a.shape(), std::move(y)), {a.id, b.id},
                     [rows, cols](Tape& t, std::size_t self) {
                       const std::size_t l = t.input(self, 0);
                       const std::size_t r = t.input(self, 1);
                       if (t.requires_grad(l)) t.grad(l) += t.grad(self);
                       if (t.requires_grad(r)) {
                         const auto up = as_matrix(t.grad(self), rows, cols);
                         t.grad(r) += up.colwise().sum().transpose();
                       }
                     });
}

Var scale(Var a, double factor) {
  Tape& tape = *a.tape;
  return tape.record("scale", make(a.shape(), a.value().flat() * factor), {a.id},
                     [factor](Tape& t, std::size_t self) {
                       const std::size_t in = t.input(self, 0);
                       if (t.requires_grad(in)) t.grad(in) += factor * t.grad(self);
                     });
}

Var add_scalar(Var a, double offset) {
  Tape& tape = *a.tape;
  return tape.record("add_scalar", make(a.shape(), a.value().flat().array() + offset), {a.id},
                     [](Tape& t, std::size_t self) {
                       const std::size_t in = t.input(self, 0);
                       if (t.requires_grad(in)) t.grad(in) += t.grad(self);
                     });
}

Var matmul(Var a, Var b) {
  Tape& tape = same_tape("matmul", a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.cols() != bv.rows()) {
    shape_error(tape, "matmul", "inner dimensions differ: " + shape_string(a.shape()) + " x " +
                                    shape_string(b.shape()));
  }
  const std::size_t m = av.rows();
  const std::size_t k = av.cols();
  const std::size_t n = bv.cols();
  RowMatrix y = av.matrix() * bv.matrix();
  return tape.record("matmul", Tensor::from_matrix(y), {a.id, b.id}, [m, k, n](Tape& t, std::size_t self) {
    const std::size_t l = t.input(self, 0);
    const std::size_t r = t.input(self, 1);
    const auto up = as_matrix(t.grad(self), m, n);
    if (t.requires_grad(l)) {
      Eigen::Map<RowMatrix> gl(t.grad(l).data(), static_cast<Index>(m), static_cast<Index>(k));
      gl.noalias() += up * t.value(r).matrix().transpose();
    }
    if (t.requires_grad(r)) {
      Eigen::Map<RowMatrix> gr(t.grad(r).data(), static_cast<Index>(k), static_cast<Index>(n));
      gr.noalias() += t.value(l).matrix().transpose() * up;
    }
  });
}

Var sigmoid(Var a) {
  return unary(
      "sigmoid", a,
      [](double x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Var tanh(Var a) {
  return unary("tanh", a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Var abs(Var a) {
  return unary("abs", a, [](double x) { return std::abs(x); },
               [](double x, double) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); });
}

Var relu(Var a) {
  return unary("relu", a, [](double x) { return x > 0 ? x : 0.0; },
               [](double x, double) { return x >= 0 ? 1.0 : 0.0; });
}

Var square(Var a) {
  return unary("square", a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Var sum(Var a) {
  Tape& tape = *a.tape;
  return tape.record("sum", Tensor::scalar(a.value().flat().sum()), {a.id}, [](Tape& t, std::size_t self) {
    const std::size_t in = t.input(self, 0);
    if (t.requires_grad(in)) t.grad(in).array() += t.grad(self)[0];
  });
}

Var mean(Var a) {
  const std::size_t n = a.value().size();
  if (n == 0) shape_error(*a.tape, "mean", "empty input");
  Tape& tape = *a.tape;
  const double inv = 1.0 / static_cast<double>(n);
  return tape.record("mean", Tensor::scalar(a.value().flat().sum() * inv), {a.id},
                     [inv](Tape& t, std::size_t self) {
                       const std::size_t in = t.input(self, 0);
                       if (t.requires_grad(in)) t.grad(in).array() += t.grad(self)[0] * inv;
                     });
}

Var softmax_cross_entropy(Var logits, std::span<const int> targets) {
  Tape& tape = *logits.tape;
  const Tensor& lv = logits.value();
  const std::size_t rows = lv.rows();
  const std::size_t cols = lv.cols();
  if (targets.size() != rows || rows == 0) {
    shape_error(tape, "softmax_cross_entropy",
                std::to_string(targets.size()) + " targets for logits of shape " + shape_string(logits.shape()));
  }
  const auto x = lv.matrix();
  RowMatrix probs(static_cast<Index>(rows), static_cast<Index>(cols));
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const int target = targets[r];
    if (target < 0 || static_cast<std::size_t>(target) >= cols) {
      shape_error(tape, "softmax_cross_entropy",
                  "target " + std::to_string(target) + " outside vocabulary of " + std::to_string(cols));
    }
    const auto row = x.row(static_cast<Index>(r));
    const double peak = row.maxCoeff();
    auto shifted = (row.array() - peak).exp();
    const double z = shifted.sum();
    probs.row(static_cast<Index>(r)) = shifted / z;
    total += peak + std::log(z) - row[target];
  }
  const double inv = 1.0 / static_cast<double>(rows);
  std::vector<int> kept(targets.begin(), targets.end());
  return tape.record("softmax_cross_entropy", Tensor::scalar(total * inv), {logits.id},
                     [probs = std::move(probs), kept = std::move(kept), inv](Tape& t, std::size_t self) {
                       const std::size_t in = t.input(self, 0);
                       if (!t.requires_grad(in)) return;
                       const double up = t.grad(self)[0] * inv;
                       auto g = t.grad_matrix(in);
                       g += up * probs;
                       for (std::size_t r = 0; r < kept.size(); ++r) g(static_cast<Index>(r), kept[r]) -= up;
                     });
}

Var embedding(Var table, std::span<const int> ids) {
  Tape& tape = *table.tape;
  const Tensor& tv = table.value();
  const std::size_t vocab = tv.rows();
  const std::size_t width = tv.cols();
  RowMatrix y(static_cast<Index>(ids.size()), static_cast<Index>(width));
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (ids[r] < 0 || static_cast<std::size_t>(ids[r]) >= vocab) {
      shape_error(tape, "embedding", "id " + std::to_string(ids[r]) + " outside table of " + std::to_string(vocab));
    }
    y.row(static_cast<Index>(r)) = tv.matrix().row(ids[r]);
  }
  std::vector<int> kept(ids.begin(), ids.end());
  return tape.record("embedding", Tensor::from_matrix(y), {table.id},
                     [kept = std::move(kept), width](Tape& t, std::size_t self) {
                       const std::size_t in = t.input(self, 0);
                       if (!t.requires_grad(in)) return;
                       const auto up = as_matrix(t.grad(self), kept.size(), width);
                       auto g = t.grad_matrix(in);
                       for (std::size_t r = 0; r < kept.size(); ++r) g.row(kept[r]) += up.row(static_cast<Index>(r));
                     });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: no inputs");
  Tape& tape = *parts.front().tape;
  const std::size_t rows = parts.front().value().rows();
  std::vector<std::size_t> widths;
  std::vector<std::size_t> ids;
  std::size_t total = 0;
  for (const Var& p : parts) {
    if (p.tape != &tape) throw std::invalid_argument("concat_cols: operands live on different tapes");
    if (p.value().rows() != rows) {
      shape_error(tape, "concat_cols", "row counts differ: " + shape_string(parts.front().shape()) + " vs " +
                                           shape_string(p.shape()));
    }
    widths.push_back(p.value().cols());
    ids.push_back(p.id);
    total += widths.back();
  }
  RowMatrix y(static_cast<Index>(rows), static_cast<Index>(total));
  Index offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    y.middleCols(offset, static_cast<Index>(widths[k])) = parts[k].value().matrix();
    offset += static_cast<Index>(widths[k]);
  }
  return tape.record("concat_cols", Tensor::from_matrix(y), std::move(ids),
                     [widths, rows, total](Tape& t, std::size_t self) {
                       const auto up = as_matrix(t.grad(self), rows, total);
                       Index off = 0;
                       for (std::size_t k = 0; k < widths.size(); ++k) {
                         const std::size_t in = t.input(self, k);
                         const auto w = static_cast<Index>(widths[k]);
                         if (t.requires_grad(in)) t.grad_matrix(in) += up.middleCols(off, w);
                         off += w;
                       }
                     });
}

Var concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat_rows: no inputs");
  Tape& tape = *parts.front().tape;
  const std::size_t cols = parts.front().value().cols();
  std::vector<std::size_t> heights;
  std::vector<std::size_t> ids;
  std::size_t total = 0;
  for (const Var& p : parts) {
    if (p.tape != &tape) throw std::invalid_argument("concat_rows: operands live on different tapes");
    if (p.value().cols() != cols) {
      shape_error(tape, "concat_rows", "column counts differ: " + shape_string(parts.front().shape()) + " vs " +
                                           shape_string(p.shape()));
    }
    heights.push_back(p.value().rows());
    ids.push_back(p.id);
    total += heights.back();
  }
  RowMatrix y(static_cast<Index>(total), static_cast<Index>(cols));
  Index offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    y.middleRows(offset, static_cast<Index>(heights[k])) = parts[k].value().matrix();
    offset += static_cast<Index>(heights[k]);
  }
  return tape.record("concat_rows", Tensor::from_matrix(y), std::move(ids),
                     [heights, cols](Tape& t, std::size_t self) {
                       const Eigen::VectorXd& up = t.grad(self);
                       Index off = 0;
                       for (std::size_t k = 0; k < heights.size(); ++k) {
                         const std::size_t in = t.input(self, k);
                         const auto n = static_cast<Index>(heights[k] * cols);
                         if (t.requires_grad(in)) t.grad(in) += up.segment(off, n);
                         off += n;
                       }
                     });
}

Var slice_cols(Var a, std::size_t begin, std::size_t end) {
  Tape& tape = *a.tape;
  const std::size_t rows = a.value().rows();
  const std::size_t cols = a.value().cols();
  if (begin >= end || end > cols) {
    shape_error(tape, "slice_cols", "range [" + std::to_string(begin) + ", " + std::to_string(end) +
                                        ") invalid for " + shape_string(a.shape()));
  }
  const auto width = static_cast<Index>(end - begin);
  RowMatrix y = a.value().matrix().middleCols(static_cast<Index>(begin), width);
  return tape.record("slice_cols", Tensor::from_matrix(y), {a.id}, [begin, width, rows](Tape& t, std::size_t self) {
    const std::size_t in = t.input(self, 0);
    if (!t.requires_grad(in)) return;
    const auto up = as_matrix(t.grad(self), rows, static_cast<std::size_t>(width));
    t.grad_matrix(in).middleCols(static_cast<Index>(begin), width) += up;
  });
}

}  // namespace scs::ad

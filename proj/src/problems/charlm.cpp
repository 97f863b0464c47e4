#include "scs/problems/charlm.hpp"

#include "scs/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace scs {
namespace {

ParamLayout charlm_layout(std::size_t vocab, std::size_t layers, std::size_t hidden) {
  if (layers == 0 || hidden == 0) throw std::invalid_argument("charlm: layers and hidden must be at least 1");
  std::vector<ad::Shape> shapes{{vocab, hidden}};
  for (std::size_t l = 0; l < layers; ++l) {
    shapes.push_back({2 * hidden, 4 * hidden});
    shapes.push_back({1, 4 * hidden});
  }
  shapes.push_back({hidden, vocab});
  shapes.push_back({1, vocab});
  return ParamLayout(std::move(shapes));
}

}  // namespace

CharLmObjective::CharLmObjective(std::shared_ptr<const Corpus> corpus, std::size_t layers, std::size_t hidden,
                                 BatchSpec spec)
    : TapeObjective(charlm_layout(corpus->vocab_size(), layers, hidden)),
      corpus_(std::move(corpus)),
      layers_(layers),
      hidden_(hidden),
      spec_(spec) {
  spec_.validate();
  window_count(*corpus_, spec_.seq_len);
}

std::size_t CharLmObjective::examples_per_epoch() const {
  return std::max<std::size_t>(1, (corpus_->size() - 1) / spec_.seq_len);
}

Vector CharLmObjective::initial_point() const {
  Vector theta = Vector::Zero(static_cast<Eigen::Index>(layout().total()));
  std::mt19937_64 rng(spec_.seed);
  auto fill = [&](std::size_t slot, double fan_in) {
    const double bound = 1.0 / std::sqrt(fan_in);
    std::uniform_real_distribution<double> u(-bound, bound);
    const auto off = static_cast<Eigen::Index>(layout().offset(slot));
    const auto n = static_cast<Eigen::Index>(ad::shape_size(layout().shape(slot)));
    for (Eigen::Index i = 0; i < n; ++i) theta[off + i] = u(rng);
  };
  fill(0, static_cast<double>(vocab_size()));
  for (std::size_t l = 0; l < layers_; ++l) fill(1 + 2 * l, static_cast<double>(2 * hidden_));
  fill(1 + 2 * layers_, static_cast<double>(hidden_));
  return theta;
}

ad::Var CharLmObjective::build(ad::Tape& tape, std::span<const ad::Var> params,
                               std::span<const std::size_t> batch) const {
  using ad::Var;
  if (batch.empty()) throw std::invalid_argument("charlm: empty batch");
  const TokenBatch tokens = make_batch(*corpus_, batch, spec_.seq_len);
  const std::size_t rows = tokens.batch;
  const std::size_t steps = tokens.seq_len;
  const std::size_t h = hidden_;

  const Var zero = tape.constant(ad::Tensor::zeros({rows, h}), "zero-state");
  std::vector<Var> hs(layers_, zero);
  std::vector<Var> cs(layers_, zero);
  std::vector<Var> top;
  top.reserve(steps);
  std::vector<int> targets;
  targets.reserve(rows * steps);
  std::vector<int> step_ids(rows);

  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t r = 0; r < rows; ++r) {
      step_ids[r] = tokens.inputs[r * steps + t];
      targets.push_back(tokens.targets[r * steps + t]);
    }
    Var x = ad::embedding(params[0], step_ids);
    for (std::size_t l = 0; l < layers_; ++l) {
      const Var in[] = {x, hs[l]};
      const Var z = ad::add_row(ad::matmul(ad::concat_cols(in), params[1 + 2 * l]), params[2 + 2 * l]);
      const Var i_gate = ad::sigmoid(ad::slice_cols(z, 0, h));
      const Var f_gate = ad::sigmoid(ad::slice_cols(z, h, 2 * h));
      const Var g_cell = ad::tanh(ad::slice_cols(z, 2 * h, 3 * h));
      const Var o_gate = ad::sigmoid(ad::slice_cols(z, 3 * h, 4 * h));
      cs[l] = ad::add(ad::mul(f_gate, cs[l]), ad::mul(i_gate, g_cell));
      hs[l] = ad::mul(o_gate, ad::tanh(cs[l]));
      x = hs[l];
    }
    top.push_back(x);
  }
  const Var stacked = ad::concat_rows(top);
  const Var logits = ad::add_row(ad::matmul(stacked, params[1 + 2 * layers_]), params[2 + 2 * layers_]);
  return ad::softmax_cross_entropy(logits, targets);
}

double CharLmObjective::full_loss(const Vector& theta) const {
  const std::size_t windows = dataset_size();
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s < windows; s += spec_.seq_len) starts.push_back(s);
  double total = 0.0;
  for (std::size_t begin = 0; begin < starts.size(); begin += spec_.batch) {
    const std::size_t end = std::min(starts.size(), begin + spec_.batch);
    const std::span<const std::size_t> chunk(starts.data() + begin, end - begin);
    total += loss(theta, chunk) * static_cast<double>(chunk.size());
  }
  return total / static_cast<double>(starts.size());
}

std::unique_ptr<CharLmObjective> charlm_objective(Corpus corpus, std::size_t layers, std::size_t hidden,
                                                  BatchSpec spec) {
  return std::make_unique<CharLmObjective>(std::make_shared<const Corpus>(std::move(corpus)), layers, hidden, spec);
}

}  // namespace scs

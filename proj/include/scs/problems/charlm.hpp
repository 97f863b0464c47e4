#pragma once

#include "scs/problems/corpus.hpp"
#include "scs/problems/objective.hpp"

#include <memory>

namespace scs {

/**
 * Character-level language model: embedding -> stacked LSTM -> linear
 * projection -> mean next-token negative log-likelihood.
 *
 * Batch entries are window start offsets into the corpus. The recurrent
 * state starts at zero for every batch. Gates are laid out as
 * [input, forget, cell, output] along the 4H columns of each layer's weight.
 *
 * Parameters, in flattening order:
 *   embedding [V, H]
 *   per layer: weight [2H, 4H] (rows: layer input then recurrent), bias [1, 4H]
 *   projection [H, V], projection bias [1, V]
 */
class CharLmObjective final : public TapeObjective {
 public:
  CharLmObjective(std::shared_ptr<const Corpus> corpus, std::size_t layers, std::size_t hidden, BatchSpec spec);

  std::string name() const override { return "charlm"; }
  std::size_t dataset_size() const override { return window_count(*corpus_, spec_.seq_len); }
  /// Non-overlapping windows in the corpus.
  std::size_t examples_per_epoch() const override;
  Smoothness smoothness() const override { return Smoothness::smooth; }
  /// Uniform in +/- 1/sqrt(fan-in), biases zero, seeded by spec.seed.
  Vector initial_point() const override;
  ad::Var build(ad::Tape& tape, std::span<const ad::Var> params, std::span<const std::size_t> batch) const override;
  /// Mean loss over the non-overlapping windows, evaluated spec.batch at a time.
  double full_loss(const Vector& theta) const override;

  std::size_t vocab_size() const { return corpus_->vocab_size(); }
  std::size_t layers() const { return layers_; }
  std::size_t hidden() const { return hidden_; }
  const BatchSpec& spec() const { return spec_; }
  const Corpus& corpus() const { return *corpus_; }

 private:
  std::shared_ptr<const Corpus> corpus_;
  std::size_t layers_;
  std::size_t hidden_;
  BatchSpec spec_;
};

std::unique_ptr<CharLmObjective> charlm_objective(Corpus corpus, std::size_t layers, std::size_t hidden,
                                                  BatchSpec spec);

}  // namespace scs

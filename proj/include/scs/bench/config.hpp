#pragma once

#include "scs/optim.hpp"
#include "scs/problems/corpus.hpp"
#include "scs/problems/objective.hpp"
#include "scs/sampling.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace scs::bench {

/// Invalid or incomplete run configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flag names without the leading dashes, e.g. "lr" -> "0.001".
using KeyValues = std::map<std::string, std::string>;

struct RunConfig {
  std::string problem = "l1-quadratic";
  OptimizerKind optimizer = OptimizerKind::scsadamw;
  HyperParams hyper;
  BatchSpec batch;
  SamplerConfig sampler;
  std::optional<long> epochs;
  std::optional<long> max_steps;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  std::filesystem::path corpus;
  std::size_t dim = 50;
  std::size_t layers = 2;
  std::size_t hidden = 64;
  std::size_t max_vocab = 256;
  /// Every key that was set, as given. Echoed into the results header.
  KeyValues source;
};

/// "key=value" lines; blank lines and lines starting with '#' are ignored.
KeyValues parse_config_text(std::istream& in);
KeyValues read_config_file(const std::filesystem::path& path);

/// Validates and converts. `seed` is mandatory; unknown keys are rejected.
RunConfig make_config(const KeyValues& values);

/// Every key make_config understands.
const std::vector<std::string>& config_keys();

/// Default corpus shipped with the project.
std::filesystem::path bundled_corpus_path();

std::unique_ptr<Objective> make_objective(const RunConfig& config);

/// ceil(examples_per_epoch / batch), at least 1.
long steps_per_epoch(const Objective& objective, const RunConfig& config);
/// Step budget from max-steps and/or epochs (the smaller when both are set).
long step_budget(const Objective& objective, const RunConfig& config);

}  // namespace scs::bench

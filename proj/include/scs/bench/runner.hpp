#pragma once

#include "scs/bench/config.hpp"
#include "scs/bench/results.hpp"

namespace scs::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  Summary summary;
  RunResult result;
};

/// Builds the objective, optimizer and sampler for `config`, runs to
/// completion and streams everything to config.out (when set).
/// Throws ConfigError for problems detected before the run starts; no output
/// file is created in that case.
RunOutcome execute_run(const RunConfig& config);

}  // namespace scs::bench

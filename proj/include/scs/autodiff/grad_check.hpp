#pragma once

#include "scs/autodiff/tape.hpp"

#include <span>

namespace scs::ad {

/// Central-difference gradient check.
///
/// Returns max over every parameter coordinate of
/// |g_ad - g_fd| / max(1, |g_fd|) with g_fd = (f(x + h) - f(x - h)) / 2h.
/// Never throws on a large error; the caller decides what is acceptable.
double grad_check(const Graph& graph, std::span<const Tensor> params, double fd_step);

}  // namespace scs::ad

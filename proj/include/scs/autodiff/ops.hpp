#pragma once

#include "scs/autodiff/tape.hpp"

#include <cstddef>
#include <span>
#include <vector>

// Differentiable primitives. Every function records one node on the tape its
// inputs live on; shape errors name the node that would have been created.
namespace scs::ad {

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
/// a[r, c] + b[c] broadcast over rows (bias add).
Var add_row(Var a, Var b);
Var scale(Var a, double factor);
Var add_scalar(Var a, double offset);
Var matmul(Var a, Var b);

Var sigmoid(Var a);
Var tanh(Var a);
/// |x| with derivative 0 at x = 0.
Var abs(Var a);
/// max(0, x) with derivative 1 at x = 0 (the active side of a hinge).
Var relu(Var a);
Var square(Var a);

Var sum(Var a);
Var mean(Var a);

/// Mean over rows of -log softmax(logits[r])[targets[r]], computed with
/// max-subtraction.
Var softmax_cross_entropy(Var logits, std::span<const int> targets);

/// Gathers rows `ids` of `table` into an [ids.size(), cols] tensor.
Var embedding(Var table, std::span<const int> ids);

Var concat_cols(std::span<const Var> parts);
Var concat_rows(std::span<const Var> parts);
/// Columns [begin, end) of a.
Var slice_cols(Var a, std::size_t begin, std::size_t end);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator*(Var a, Var b) { return mul(a, b); }
inline Var operator*(double s, Var a) { return scale(a, s); }

}  // namespace scs::ad

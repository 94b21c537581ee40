#pragma once

#include <vector>

#include "common.hpp"
#include "weights.hpp"

namespace ebel {

// T_i = w(i/n) * sum_{j<=i} (X_j - mu), i = 1..n.
PointSet forward_block_sums(const TimeSeries& X, const std::vector<double>& mu,
                            const WeightFn& w);

// The n forward sums followed by the n sums of the reversed series (2n points).
PointSet forward_backward_block_sums(const TimeSeries& X, const std::vector<double>& mu,
                                     const WeightFn& w);

// Maximally overlapping block sums of length b: n - b + 1 points.
PointSet ol_block_sums(const TimeSeries& X, const std::vector<double>& mu, int b);

}  // namespace ebel

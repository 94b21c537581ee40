#pragma once

#include <vector>

#include "common.hpp"

namespace ebel {

// -(2/b) * log EL ratio of the overlapping block sums; +infinity on hull failure.
double bel_statistic(const TimeSeries& X, const std::vector<double>& mu, int b);

// {mu: bel_statistic <= chi-square_1 quantile at level}. Constant series give
// a degenerate zero-width interval.
Interval bel_ci_mean(const TimeSeries& X, int b, double level);

enum class BlockRule { ftk, aar, fixed };

struct BlockSelection {
    BlockRule rule = BlockRule::fixed;
    int chosen_b = 1;
    // diagnostics (zero when not applicable to the rule)
    double rho1 = 0.0;       // lag-1 autocorrelation (AAR)
    double alpha1 = 0.0;     // AR(1) curvature coefficient (AAR)
    double bandwidth = 0.0;  // flat-top truncation lag (FTK)
    double g_hat = 0.0;      // flat-top derivative-spectrum estimate (FTK)
    double d_hat = 0.0;      // (4/3) g^2 denominator (FTK)
    double c_hat = 0.0;      // plug-in coefficient of n^{1/3} (FTK)
};

// Flat-top-kernel plug-in block length, order C*n^{1/3}, clamped to [1, n/2].
BlockSelection select_block_ftk(const TimeSeries& X);

// AR(1) Bartlett-bandwidth rule: b = round(1.1447*(alpha1*n)^{1/3}) clamped.
BlockSelection select_block_aar(const TimeSeries& X);

}  // namespace ebel

#pragma once

#include <functional>
#include <vector>

#include "common.hpp"
#include "limit_law.hpp"
#include "weights.hpp"

namespace ebel {

struct EbelConfig {
    Scheme scheme = Scheme::ebel1;
    WeightFn weight;
    double level = 0.9;
    const QuantileTable* calibration = nullptr;  // required for region/interval ops
};

// Throws invalid_argument unless the calibration table exists and matches the
// config's scheme, weight kind, dimension, and level.
void check_calibration(const EbelConfig& cfg, int d);

// -(1/n) log EL ratio of the scheme's block sums (1/n for EBEL2 as well,
// despite its 2n points); +infinity when the hull condition fails.
double ebel_statistic(const TimeSeries& X, const std::vector<double>& mu,
                      const EbelConfig& cfg);

// {mu: statistic <= calibration quantile} for scalar series. Constant series
// give a degenerate zero-width interval.
Interval ebel_ci_mean(const TimeSeries& X, const EbelConfig& cfg);

bool ebel_region_member(const TimeSeries& X, const std::vector<double>& mu,
                        const EbelConfig& cfg);

struct SmoothFunctionModel {
    int p = 0;  // parameter dimension, p <= d
    std::function<std::vector<double>(const std::vector<double>&)> H;
    // optional row-major p x d Jacobian; finite differences when absent
    std::function<std::vector<double>(const std::vector<double>&)> jacobian;
};

// Profile statistic: minimum of the mean statistic over {mu: H(mu) = theta}.
// Inner problem is the EL solve; the outer search runs a simplex method on a
// null-space chart of the constraint manifold. Throws profile_error when the
// constraint cannot be satisfied or the Jacobian loses rank.
double ebel_statistic_smooth(const TimeSeries& X, const SmoothFunctionModel& model,
                             const std::vector<double>& theta, const EbelConfig& cfg);

// G maps (observation row, parameter) to R^p; sums of G replace centered rows.
using EstimatingFunction =
    std::function<void(const double* x_row, const double* theta, double* out)>;

double ebel_statistic_ef(const TimeSeries& X, int p, const EstimatingFunction& G,
                         const std::vector<double>& theta, const EbelConfig& cfg);

}  // namespace ebel

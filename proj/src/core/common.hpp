#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebel {

// n observations in R^d, row-major.
struct TimeSeries {
    int n = 0;
    int d = 0;
    std::vector<double> data;  // n*d

    double at(int i, int j) const { return data[static_cast<size_t>(i) * d + j]; }
};

// m points in R^d, row-major. Holds centered block sums or a discretized
// weighted Brownian path, depending on the caller.
struct PointSet {
    int m = 0;
    int d = 0;
    std::vector<double> pts;  // m*d

    double at(int i, int j) const { return pts[static_cast<size_t>(i) * d + j]; }
};

inline TimeSeries make_series(const double* data, int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("series dimensions must be positive");
    TimeSeries x;
    x.n = n;
    x.d = d;
    x.data.assign(data, data + static_cast<size_t>(n) * d);
    for (double v : x.data)
        if (!std::isfinite(v)) throw std::invalid_argument("series contains non-finite value");
    return x;
}

inline void require_valid(const PointSet& ps) {
    if (ps.m < 1 || ps.d < 1) throw std::invalid_argument("point set must be non-empty");
    if (ps.pts.size() != static_cast<size_t>(ps.m) * ps.d)
        throw std::invalid_argument("point set storage size mismatch");
    for (double v : ps.pts)
        if (!std::isfinite(v)) throw std::invalid_argument("point set contains non-finite coordinate");
}

struct Interval {
    double lo = 0;
    double hi = 0;
    bool degenerate = false;
};

}  // namespace ebel

#include "blocking.hpp"

#include <stdexcept>

namespace ebel {

namespace {

void check_mu(const TimeSeries& X, const std::vector<double>& mu) {
    if (static_cast<int>(mu.size()) != X.d)
        throw std::invalid_argument("mu dimension does not match series");
}

// Scan in `dir` from `start`, writing w(i/n)*cumsum into out[offset..].
// The scale factor is applied as one final multiply so that rescaling the
// weight rescales every point exactly.
void scan(const TimeSeries& X, const std::vector<double>& mu, const WeightFn& w,
          int start, int dir, PointSet& out, int offset) {
    const int n = X.n, d = X.d;
    std::vector<double> acc(d, 0.0);
    for (int i = 0; i < n; ++i) {
        const int row = start + dir * i;
        for (int j = 0; j < d; ++j) acc[j] += X.at(row, j) - mu[j];
        const double wv = weight_shape(w, static_cast<double>(i + 1) / n);
        for (int j = 0; j < d; ++j)
            out.pts[static_cast<size_t>(offset + i) * d + j] = w.scale * (wv * acc[j]);
    }
}

}  // namespace

PointSet forward_block_sums(const TimeSeries& X, const std::vector<double>& mu,
                            const WeightFn& w) {
    check_mu(X, mu);
    if (X.n < 2) throw std::invalid_argument("need at least 2 observations");
    PointSet out;
    out.m = X.n;
    out.d = X.d;
    out.pts.resize(static_cast<size_t>(X.n) * X.d);
    scan(X, mu, w, 0, +1, out, 0);
    return out;
}

PointSet forward_backward_block_sums(const TimeSeries& X, const std::vector<double>& mu,
                                     const WeightFn& w) {
    check_mu(X, mu);
    if (X.n < 2) throw std::invalid_argument("need at least 2 observations");
    PointSet out;
    out.m = 2 * X.n;
    out.d = X.d;
    out.pts.resize(static_cast<size_t>(2 * X.n) * X.d);
    scan(X, mu, w, 0, +1, out, 0);
    scan(X, mu, w, X.n - 1, -1, out, X.n);
    return out;
}

PointSet ol_block_sums(const TimeSeries& X, const std::vector<double>& mu, int b) {
    check_mu(X, mu);
    if (b < 1 || b > X.n) throw std::invalid_argument("block length outside [1, n]");
    const int n = X.n, d = X.d;
    // prefix sums of centered rows: P_i = sum of first i centered rows
    std::vector<double> prefix(static_cast<size_t>(n + 1) * d, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            prefix[static_cast<size_t>(i + 1) * d + j] =
                prefix[static_cast<size_t>(i) * d + j] + (X.at(i, j) - mu[j]);
    PointSet out;
    out.m = n - b + 1;
    out.d = d;
    out.pts.resize(static_cast<size_t>(out.m) * d);
    for (int i = 0; i < out.m; ++i)
        for (int j = 0; j < d; ++j)
            out.pts[static_cast<size_t>(i) * d + j] =
                prefix[static_cast<size_t>(i + b) * d + j] -
                prefix[static_cast<size_t>(i) * d + j];
    return out;
}

}  // namespace ebel

#include "bel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blocking.hpp"
#include "ci_search.hpp"
#include "el_core.hpp"
#include "errors.hpp"
#include "special.hpp"

namespace ebel {

namespace {

void sample_moments(const TimeSeries& X, double& mean, double& sd) {
    mean = 0.0;
    for (int i = 0; i < X.n; ++i) mean += X.at(i, 0);
    mean /= X.n;
    double ss = 0.0;
    for (int i = 0; i < X.n; ++i) {
        const double c = X.at(i, 0) - mean;
        ss += c * c;
    }
    sd = std::sqrt(ss / X.n);
}

// Biased sample autocovariances R(0..kmax) about the sample mean.
std::vector<double> autocovariances(const TimeSeries& X, int kmax) {
    const int n = X.n;
    double mean, sd;
    sample_moments(X, mean, sd);
    std::vector<double> r(kmax + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
        double s = 0.0;
        for (int t = 0; t + k < n; ++t)
            s += (X.at(t, 0) - mean) * (X.at(t + k, 0) - mean);
        r[k] = s / n;
    }
    return r;
}

double flat_top(double t) {
    const double a = std::fabs(t);
    if (a <= 0.5) return 1.0;
    if (a <= 1.0) return 2.0 * (1.0 - a);
    return 0.0;
}

int clamp_block(double raw, int n) {
    const long b = static_cast<long>(std::floor(raw + 0.5));  // half-up
    const long hi = std::max(1, n / 2);
    return static_cast<int>(std::clamp(b, 1L, hi));
}

void require_d1(const TimeSeries& X) {
    if (X.d != 1) throw std::invalid_argument("block selection requires a scalar series");
    if (X.n < 20) throw std::invalid_argument("need at least 20 observations");
}

}  // namespace

double bel_statistic(const TimeSeries& X, const std::vector<double>& mu, int b) {
    const PointSet ps = ol_block_sums(X, mu, b);
    ELOptions opt;
    opt.tol = scaled_el_tol(ps);
    return -2.0 / b * log_el_ratio(ps, opt);
}

Interval bel_ci_mean(const TimeSeries& X, int b, double level) {
    if (X.d != 1) throw std::invalid_argument("interval requires a scalar series");
    if (b < 1 || b > X.n) throw std::invalid_argument("block length outside [1, n]");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0,1)");
    double mean, sd;
    sample_moments(X, mean, sd);
    if (sd == 0.0) return Interval{mean, mean, true};
    const double a = chisq_quantile(level, 1);
    return bracket_ci([&](double mu) { return bel_statistic(X, {mu}, b); }, mean, sd, a,
                      1e-8 * sd);
}

BlockSelection select_block_ftk(const TimeSeries& X) {
    require_d1(X);
    const int n = X.n;
    const int M = std::max(1, static_cast<int>(std::llround(std::pow(n, 0.2))));
    const auto r = autocovariances(X, std::min(M, n - 1));
    if (!(r[0] > 1e-14)) throw degenerate_sample("series is (numerically) constant");

    double g_hat = 0.0, g_small = r[0];
    for (int k = 1; k < static_cast<int>(r.size()); ++k) {
        const double lam = flat_top(static_cast<double>(k) / M);
        g_hat += 2.0 * lam * k * r[k];
        g_small += 2.0 * lam * r[k];
    }
    const double d_hat = 4.0 / 3.0 * g_small * g_small;

    BlockSelection sel;
    sel.rule = BlockRule::ftk;
    sel.bandwidth = M;
    sel.g_hat = g_hat;
    sel.d_hat = d_hat;
    sel.c_hat = d_hat > 0.0 ? std::cbrt(2.0 * g_hat * g_hat / d_hat) : 0.0;
    sel.chosen_b = clamp_block(sel.c_hat * std::cbrt(static_cast<double>(n)), n);
    return sel;
}

BlockSelection select_block_aar(const TimeSeries& X) {
    require_d1(X);
    const int n = X.n;
    const auto r = autocovariances(X, 1);
    if (!(r[0] > 1e-14)) throw degenerate_sample("series is (numerically) constant");
    const double rho = r[1] / r[0];

    BlockSelection sel;
    sel.rule = BlockRule::aar;
    sel.rho1 = rho;
    sel.alpha1 = 4.0 * rho * rho / ((1.0 - rho) * (1.0 - rho) * (1.0 + rho) * (1.0 + rho));
    sel.chosen_b = clamp_block(1.1447 * std::cbrt(sel.alpha1 * n), n);
    return sel;
}

}  // namespace ebel

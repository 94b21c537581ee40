#include "ci_search.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebel {

namespace {

double find_endpoint(const std::function<double(double)>& stat, double center,
                     double step, double threshold, double tol, int dir) {
    double inside = center;
    double outside = 0.0;
    bool bracketed = false;
    for (int k = 1; k <= 4096; ++k) {
        const double cand = center + dir * k * step;
        if (stat(cand) <= threshold) {
            inside = cand;
        } else {
            outside = cand;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) return inside;  // region wider than 4096 steps; report reach
    for (int it = 0; it < 60 && (dir > 0 ? outside - inside : inside - outside) > tol; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside) break;
        if (stat(mid) <= threshold) inside = mid; else outside = mid;
    }
    return 0.5 * (inside + outside);
}

// Argmin of stat over [lo, hi]: coarse scan, then golden-section refinement
// around the best coarse point.
double minimize_scan(const std::function<double(double)>& stat, double lo, double hi) {
    const int grid = 100;
    double best = lo, fbest = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double mu = lo + (hi - lo) * i / grid;
        const double f = stat(mu);
        if (f < fbest) {
            fbest = f;
            best = mu;
        }
    }
    const double h = (hi - lo) / grid;
    double a = best - h, b = best + h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = stat(c1), f2 = stat(c2);
    for (int it = 0; it < 120; ++it) {
        if (f1 > f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = stat(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = stat(c1);
        }
    }
    const double mid = 0.5 * (a + b);
    return stat(mid) <= fbest ? mid : best;
}

}  // namespace

Interval bracket_ci(const std::function<double(double)>& stat, double center,
                    double step, double threshold, double tol) {
    if (!(step > 0.0)) throw std::invalid_argument("bracketing step must be positive");
    if (!(stat(center) <= threshold)) {
        // the suggested center can fall outside a nonempty region (the profile
        // minimum need not sit at the sample mean); recenter at the minimum
        for (double reach : {1.0, 4.0, 16.0}) {
            const double cand =
                minimize_scan(stat, center - reach * step, center + reach * step);
            if (stat(cand) <= threshold) {
                center = cand;
                break;
            }
        }
        if (!(stat(center) <= threshold))
            throw std::runtime_error("confidence region is empty at the requested level");
    }
    Interval out;
    out.lo = find_endpoint(stat, center, step, threshold, tol, -1);
    out.hi = find_endpoint(stat, center, step, threshold, tol, +1);
    out.degenerate = false;
    return out;
}

}  // namespace ebel

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"

namespace ebel {

struct ELOptions {
    double tol = 1e-9;  // absolute bound on the dual gradient norm
    int max_iter = 100;
};

struct ELSolution {
    std::vector<double> lambda;
    double log_ratio = 0.0;  // log R = -sum log(1 + lambda'T_i), always <= 0
    std::vector<double> probabilities;
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = true;
};

// True iff the zero vector lies in the interior of the convex hull of the
// points. d = 1 is a strict sign test; d > 1 combines a rank check with a
// small exact LP deciding whether 0 admits a strictly positive convex
// representation.
bool contains_origin_interior(const PointSet& ps);

// Relative-interior margin used for the near-degenerate hull refusal: for
// d = 1 the smaller of |min|,|max| relative to the point scale, for d > 1 the
// LP optimum (largest uniform probability floor). Exposed for tests.
double hull_margin(const PointSet& ps);

// Minimizes -sum log(1 + a'T_i) over the open feasible set by damped Newton
// with feasibility/Armijo backtracking. Throws hull_violation when 0 is not
// interior to the hull (including within 1e-12 relative margin). On iteration
// exhaustion returns the best iterate with converged = false.
ELSolution solve_el(const PointSet& ps, const ELOptions& opt = {});

// log R, or -infinity when the hull condition fails (the EL supremum over an
// empty feasible set is 0). Never throws for hull reasons.
double log_el_ratio(const PointSet& ps, const ELOptions& opt = {});

// Scalar fast path shared by the statistic and limit-law loops (d = 1, no
// allocation). Callers must have verified fmin < 0 < fmax.
struct ScalarEL {
    double lambda = 0.0;
    double sum_log = 0.0;  // sum log(1 + lambda f_i) = -log R
    int iterations = 0;
    double gradient = 0.0;
    bool converged = true;
};

bool hull_ok_1d(const double* f, int m, double* fmin_out = nullptr, double* fmax_out = nullptr);
ScalarEL solve_el_1d(const double* f, int m, double tol, int max_iter = 100);

// Caller convention for statistic-level solves: gradient tolerance scaled by
// the largest point magnitude, so convergence quality does not depend on the
// scale of the data.
inline double scaled_el_tol(const PointSet& ps) {
    double mx = 0.0;
    for (double v : ps.pts) mx = std::max(mx, std::fabs(v));
    return 1e-9 * (1.0 + mx);
}

}  // namespace ebel

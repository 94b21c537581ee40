#pragma once

#include <functional>

#include "common.hpp"

namespace ebel {

// Connected component of {mu: stat(mu) <= threshold} around `center`. When
// stat(center) exceeds the threshold the search first recenters at the
// profile minimum near `center`; if even that minimum is infeasible the
// region is empty and a runtime_error is thrown. Each endpoint is bracketed
// by stepping outward in units of `step`, then bisected to width <= tol.
// stat may return +infinity (hull failure), which counts as outside.
Interval bracket_ci(const std::function<double(double)>& stat, double center,
                    double step, double threshold, double tol);

}  // namespace ebel

#pragma once

#include <stdexcept>

namespace ebel {

// Origin not in the interior of the point hull: the EL program is infeasible.
struct hull_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_sample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// AR polynomial has a root on or inside the unit circle.
struct non_causal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Outer profile search failed to converge.
struct profile_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ebel

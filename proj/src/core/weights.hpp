#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ebel {

enum class WeightKind { constant, linear, cosine_bell, tabulated };

// Weight function on [0,1]. `scale` is a final multiplier kept separate from
// the shape so that c*w scales every evaluation (and every block sum) exactly.
struct WeightFn {
    WeightKind kind = WeightKind::constant;
    std::vector<std::pair<double, double>> table;  // (t, value) knots, tabulated only
    double scale = 1.0;
};

WeightFn make_weight(WeightKind kind, double scale = 1.0);
WeightFn make_tabulated_weight(std::vector<std::pair<double, double>> knots,
                               double scale = 1.0);

// Shape value without the scale factor.
double weight_shape(const WeightFn& w, double t);
// scale * shape; throws std::domain_error for t outside [0,1].
double weight_eval(const WeightFn& w, double t);

// Returns a copy with scale = 1. Statistics evaluate the descaled weight so
// their values are bit-identical under rescaling of w.
WeightFn descaled(WeightFn w);

// Nonnegativity on a 1024-point grid and strict positivity just right of 0;
// throws std::invalid_argument on failure or malformed tables.
void validate_weight(const WeightFn& w);

std::string weight_kind_name(WeightKind k);
bool weight_kind_from_string(const std::string& s, WeightKind& out);

}  // namespace ebel

#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebel {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

WeightFn make_weight(WeightKind kind, double scale) {
    if (kind == WeightKind::tabulated)
        throw std::invalid_argument("tabulated weight requires knots");
    WeightFn w;
    w.kind = kind;
    w.scale = scale;
    validate_weight(w);
    return w;
}

WeightFn make_tabulated_weight(std::vector<std::pair<double, double>> knots,
                               double scale) {
    WeightFn w;
    w.kind = WeightKind::tabulated;
    w.table = std::move(knots);
    w.scale = scale;
    validate_weight(w);
    return w;
}

double weight_shape(const WeightFn& w, double t) {
    switch (w.kind) {
        case WeightKind::constant:
            return 1.0;
        case WeightKind::linear:
            return t;
        case WeightKind::cosine_bell:
            return 0.5 * (1.0 - std::cos(kTwoPi * t));
        case WeightKind::tabulated: {
            const auto& tab = w.table;
            if (t <= tab.front().first) return tab.front().second;
            if (t >= tab.back().first) return tab.back().second;
            auto hi = std::upper_bound(
                tab.begin(), tab.end(), t,
                [](double x, const std::pair<double, double>& k) { return x < k.first; });
            auto lo = hi - 1;
            const double u = (t - lo->first) / (hi->first - lo->first);
            return (1.0 - u) * lo->second + u * hi->second;
        }
    }
    return 0.0;
}

double weight_eval(const WeightFn& w, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("weight argument outside [0,1]");
    return w.scale * weight_shape(w, t);
}

WeightFn descaled(WeightFn w) {
    w.scale = 1.0;
    return w;
}

void validate_weight(const WeightFn& w) {
    if (!(std::isfinite(w.scale) && w.scale > 0.0))
        throw std::invalid_argument("weight scale must be positive and finite");
    if (w.kind == WeightKind::tabulated) {
        if (w.table.size() < 2)
            throw std::invalid_argument("tabulated weight needs at least 2 knots");
        if (w.table.front().first != 0.0 || w.table.back().first != 1.0)
            throw std::invalid_argument("tabulated weight must cover [0,1]");
        for (size_t i = 0; i < w.table.size(); ++i) {
            if (!std::isfinite(w.table[i].second))
                throw std::invalid_argument("tabulated weight has non-finite value");
            if (i > 0 && !(w.table[i].first > w.table[i - 1].first))
                throw std::invalid_argument("tabulated weight knots must be increasing");
        }
    } else if (!w.table.empty()) {
        throw std::invalid_argument("knots only allowed for tabulated weights");
    }
    const int grid = 1024;
    for (int g = 1; g <= grid; ++g) {
        const double v = weight_shape(w, static_cast<double>(g) / grid);
        if (!(v >= 0.0))
            throw std::invalid_argument("weight must be nonnegative on [0,1]");
        // must be strictly positive just right of 0
        if (g <= 2 && !(v > 0.0))
            throw std::invalid_argument("weight must be positive on an interval (0,c)");
    }
}

std::string weight_kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::constant: return "constant";
        case WeightKind::linear: return "linear";
        case WeightKind::cosine_bell: return "cosine_bell";
        case WeightKind::tabulated: return "tabulated";
    }
    return "?";
}

bool weight_kind_from_string(const std::string& s, WeightKind& out) {
    if (s == "constant") out = WeightKind::constant;
    else if (s == "linear") out = WeightKind::linear;
    else if (s == "cosine_bell" || s == "cosbell") out = WeightKind::cosine_bell;
    else if (s == "tabulated") out = WeightKind::tabulated;
    else return false;
    return true;
}

}  // namespace ebel

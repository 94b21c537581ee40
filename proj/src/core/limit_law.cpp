#include "limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csv.hpp"
#include "el_core.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace ebel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Empirical quantile as the ceil(level*count)-th order statistic. The small
// slack keeps e.g. 0.9 * 50000 from rounding up to 45001 in floating point.
long order_index(double level, long count) {
    long k = static_cast<long>(std::ceil(level * static_cast<double>(count) - 1e-9)) - 1;
    return std::clamp(k, 0L, count - 1);
}

PointSet points_from_path(Scheme scheme, const WeightFn& w, const BrownianPath& B) {
    const int m = B.m, d = B.d;
    PointSet ps;
    ps.d = d;
    ps.m = scheme == Scheme::ebel2 ? 2 * m : m;
    ps.pts.resize(static_cast<size_t>(ps.m) * d);
    for (int i = 1; i <= m; ++i) {
        const double wv = weight_shape(w, static_cast<double>(i) / m);
        for (int j = 0; j < d; ++j)
            ps.pts[static_cast<size_t>(i - 1) * d + j] = wv * B.at(i - 1, j);
    }
    if (scheme == Scheme::ebel2) {
        for (int i = 1; i <= m; ++i) {
            const double wv = weight_shape(w, static_cast<double>(i) / m);
            for (int j = 0; j < d; ++j) {
                const double tail =
                    B.at(m - 1, j) - (i < m ? B.at(m - i - 1, j) : 0.0);
                ps.pts[static_cast<size_t>(m + i - 1) * d + j] = wv * tail;
            }
        }
    }
    return ps;
}

double draw_from_points(const PointSet& ps, int m) {
    ELOptions opt;
    opt.tol = scaled_el_tol(ps);
    const ELSolution sol = solve_el(ps, opt);
    return -sol.log_ratio / m;
}

}  // namespace

std::string scheme_name(Scheme s) { return s == Scheme::ebel1 ? "ebel1" : "ebel2"; }

bool scheme_from_string(const std::string& s, Scheme& out) {
    if (s == "ebel1") out = Scheme::ebel1;
    else if (s == "ebel2") out = Scheme::ebel2;
    else return false;
    return true;
}

BrownianPath simulate_brownian_path(int m, int d, RngStream& rng) {
    if (m < 2 || d < 1) throw std::invalid_argument("need m >= 2 and d >= 1");
    BrownianPath B;
    B.m = m;
    B.d = d;
    B.values.resize(static_cast<size_t>(m) * d);
    const double sd = std::sqrt(1.0 / m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            const double prev = i > 0 ? B.values[static_cast<size_t>(i - 1) * d + j] : 0.0;
            B.values[static_cast<size_t>(i) * d + j] = prev + sd * rng.normal();
        }
    return B;
}

double limit_draw(Scheme scheme, const WeightFn& w_in, int d, int m, RngStream& rng) {
    if (m < 100) throw std::invalid_argument("grid size must be at least 100");
    validate_weight(w_in);
    const WeightFn w = descaled(w_in);  // draws do not depend on the weight scale
    const BrownianPath B = simulate_brownian_path(m, d, rng);
    return draw_from_points(points_from_path(scheme, w, B), m);
}

double limit_draw_local_alternative(const WeightFn& w_in, int d, int m,
                                    const std::vector<double>& shift, RngStream& rng) {
    if (m < 100) throw std::invalid_argument("grid size must be at least 100");
    if (static_cast<int>(shift.size()) != d)
        throw std::invalid_argument("shift dimension does not match d");
    validate_weight(w_in);
    const WeightFn w = descaled(w_in);
    const BrownianPath B = simulate_brownian_path(m, d, rng);
    PointSet ps;
    ps.d = d;
    ps.m = m;
    ps.pts.resize(static_cast<size_t>(m) * d);
    for (int i = 1; i <= m; ++i) {
        const double t = static_cast<double>(i) / m;
        const double wv = weight_shape(w, t);
        for (int j = 0; j < d; ++j)
            ps.pts[static_cast<size_t>(i - 1) * d + j] =
                wv * (B.at(i - 1, j) + t * shift[j]);
    }
    return draw_from_points(ps, m);
}

QuantileTable estimate_quantiles(Scheme scheme, const WeightFn& w, int d,
                                 std::vector<double> levels, long replicates, int m,
                                 std::uint64_t seed, int threads) {
    if (replicates < 1000) throw std::invalid_argument("need at least 1000 replicates");
    if (levels.empty()) throw std::invalid_argument("need at least one level");
    for (double p : levels)
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("levels must lie in (0,1)");
    validate_weight(w);
    std::sort(levels.begin(), levels.end());

    std::vector<double> values(replicates);
    parallel_for(replicates, threads, [&](long lo, long hi) {
        for (long idx = lo; idx < hi; ++idx) {
            RngStream rng(seed, static_cast<std::uint64_t>(idx));
            try {
                values[idx] = limit_draw(scheme, w, d, m, rng);
            } catch (const hull_violation&) {
                values[idx] = kInf;  // top of the extended-real order
            }
        }
    });

    QuantileTable out;
    out.scheme = scheme;
    out.weight = w;
    out.d = d;
    out.levels = levels;
    out.replicates = replicates;
    out.grid_size = m;
    out.seed = seed;
    for (double v : values)
        if (v == kInf) ++out.hull_violations;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    out.quantiles.resize(levels.size());
    out.mc_stderr.resize(levels.size());

    const int nboot = 200;
    std::vector<double> resample(replicates), stats(nboot);
    for (size_t li = 0; li < levels.size(); ++li) {
        const long k = order_index(levels[li], replicates);
        out.quantiles[li] = sorted[k];

        RngStream boot(seed, static_cast<std::uint64_t>(replicates + 1 + li));
        for (int bIdx = 0; bIdx < nboot; ++bIdx) {
            for (long r = 0; r < replicates; ++r) {
                const long pick = static_cast<long>(boot.uniform() * replicates);
                resample[r] = values[pick];
            }
            std::nth_element(resample.begin(), resample.begin() + k, resample.end());
            stats[bIdx] = resample[k];
        }
        bool finite = true;
        for (double s : stats)
            if (!std::isfinite(s)) finite = false;
        if (!finite) {
            out.mc_stderr[li] = kInf;  // order statistic sits in the +inf atom
            continue;
        }
        double mean = 0.0;
        for (double s : stats) mean += s;
        mean /= nboot;
        double ss = 0.0;
        for (double s : stats) ss += (s - mean) * (s - mean);
        out.mc_stderr[li] = std::sqrt(ss / (nboot - 1));
    }
    return out;
}

double table_quantile(const QuantileTable& t, double level) {
    for (size_t i = 0; i < t.levels.size(); ++i)
        if (std::fabs(t.levels[i] - level) < 1e-12) return t.quantiles[i];
    throw std::invalid_argument("level not present in quantile table");
}

std::string quantile_table_csv(const QuantileTable& t) {
    std::string s = "scheme,weight,d,level,quantile,stderr,replicates,grid,seed\n";
    for (size_t i = 0; i < t.levels.size(); ++i) {
        s += scheme_name(t.scheme);
        s += ',';
        s += weight_kind_name(t.weight.kind);
        s += ',';
        s += std::to_string(t.d);
        s += ',';
        s += fmt_double(t.levels[i]);
        s += ',';
        s += fmt_double(t.quantiles[i]);
        s += ',';
        s += fmt_double(t.mc_stderr[i]);
        s += ',';
        s += std::to_string(t.replicates);
        s += ',';
        s += std::to_string(t.grid_size);
        s += ',';
        s += std::to_string(t.seed);
        s += '\n';
    }
    return s;
}

}  // namespace ebel

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"
#include "rng.hpp"
#include "weights.hpp"

namespace ebel {

enum class Scheme { ebel1, ebel2 };

std::string scheme_name(Scheme s);
bool scheme_from_string(const std::string& s, Scheme& out);

struct BrownianPath {
    int m = 0;  // grid size; values hold B(i/m) for i = 1..m
    int d = 0;
    std::vector<double> values;
    double at(int i, int j) const { return values[static_cast<size_t>(i) * d + j]; }
};

BrownianPath simulate_brownian_path(int m, int d, RngStream& rng);

// One draw of the discretized limit variable: f(t_i) = w(t_i) B(t_i) on
// t_i = i/m (EBEL2 appends w(t_i)[B(1) - B(1-t_i)]), fed to the EL solver;
// the draw is -(1/m) * log EL ratio. Throws hull_violation when 0 is not
// interior to the hull of the discrete points.
double limit_draw(Scheme scheme, const WeightFn& w, int d, int m, RngStream& rng);

// Forward-scan variant under a local alternative: f(t_i) = w(t_i)[B(t_i) + t_i*shift].
double limit_draw_local_alternative(const WeightFn& w, int d, int m,
                                    const std::vector<double>& shift, RngStream& rng);

struct QuantileTable {
    Scheme scheme = Scheme::ebel1;
    WeightFn weight;
    int d = 1;
    std::vector<double> levels;
    std::vector<double> quantiles;
    std::vector<double> mc_stderr;
    long replicates = 0;
    int grid_size = 0;
    std::uint64_t seed = 0;
    long hull_violations = 0;  // draws counted as +infinity in the sample
};

// Empirical quantiles over `replicates` draws; replicate idx uses the RNG
// stream (seed, idx), so results do not depend on the thread count.
// Hull-violating draws enter the sample as +infinity and are counted.
QuantileTable estimate_quantiles(Scheme scheme, const WeightFn& w, int d,
                                 std::vector<double> levels, long replicates, int m,
                                 std::uint64_t seed, int threads = 1);

double table_quantile(const QuantileTable& t, double level);  // exact level lookup

std::string quantile_table_csv(const QuantileTable& t);

}  // namespace ebel

// Release gate: eight numbered checks, one pass/fail line each.
//
//   acceptance          runs every check
//   acceptance <k>      runs check k only (k in 1..8)
//
// Exit status is nonzero when any executed check fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "core/bel.hpp"
#include "core/el_core.hpp"
#include "core/experiments.hpp"
#include "core/inference.hpp"
#include "core/limit_law.hpp"
#include "core/processes.hpp"
#include "core/rng.hpp"
#include "core/special.hpp"
#include "core/weights.hpp"

using namespace ebel;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
    if (x == kInf) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

MethodSpec method(const std::string& s) {
    MethodSpec m;
    if (!method_from_string(s, m)) std::abort();
    return m;
}

ProcessSpec process(const std::string& s) {
    ProcessSpec p;
    if (!process_from_string(s, p)) std::abort();
    return p;
}

// sample quantile over values that may include +inf, with the same order
// statistic convention as the reference tables, plus a bootstrap stderr
void sample_quantile(const std::vector<double>& values, double level, uint64_t seed,
                     double& q, double& se) {
    const long n = static_cast<long>(values.size());
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const long k = std::clamp(
        static_cast<long>(std::ceil(level * static_cast<double>(n) - 1e-9)) - 1, 0L,
        n - 1);
    q = sorted[k];
    const int nboot = 200;
    RngStream boot(seed, 0);
    std::vector<double> re(n), stats(nboot);
    bool any_inf = false;
    for (int b = 0; b < nboot; ++b) {
        for (long i = 0; i < n; ++i)
            re[i] = values[static_cast<long>(boot.uniform() * n)];
        std::nth_element(re.begin(), re.begin() + k, re.end());
        stats[b] = re[k];
        if (!std::isfinite(stats[b])) any_inf = true;
    }
    if (any_inf) {
        se = kInf;
        return;
    }
    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= nboot;
    double ss = 0.0;
    for (double s : stats) ss += (s - mean) * (s - mean);
    se = std::sqrt(ss / (nboot - 1));
}

// ---- check 1: simulated 90th percentiles of the two limit families ----

Verdict check_limit_percentiles() {
    struct Cell {
        Scheme scheme;
        WeightKind kind;
        const char* name;
        double target;
        double tol;
    };
    const std::vector<Cell> cells = {
        {Scheme::ebel1, WeightKind::constant, "ebel1-constant", 2.51, 0.10},
        {Scheme::ebel2, WeightKind::constant, "ebel2-constant", 2.50, 0.10},
        {Scheme::ebel1, WeightKind::linear, "ebel1-linear", 5.64, 0.20},
        {Scheme::ebel2, WeightKind::linear, "ebel2-linear", 4.37, 0.15},
        {Scheme::ebel1, WeightKind::cosine_bell, "ebel1-cosine_bell", 7.00, 0.35},
        {Scheme::ebel2, WeightKind::cosine_bell, "ebel2-cosine_bell", 3.42, 0.20},
    };
    Verdict v;
    for (const Cell& c : cells) {
        const QuantileTable t = estimate_quantiles(c.scheme, make_weight(c.kind), 1,
                                                   {0.9}, 50000, 1000, 7, 1);
        const double q = table_quantile(t, 0.9);
        v.require(std::fabs(q - c.target) <= c.tol,
                  std::string(c.name) + " q90 " + num(q) + " outside " + num(c.target) +
                      "+-" + num(c.tol));
    }
    return v;
}

// ---- check 2: coverage replication on dependent processes ----

Verdict check_coverage_replication() {
    const QuantileTable t_e1c = estimate_quantiles(Scheme::ebel1,
                                                   make_weight(WeightKind::constant), 1,
                                                   {0.9}, 50000, 1000, 7, 1);
    const QuantileTable t_e2c = estimate_quantiles(Scheme::ebel2,
                                                   make_weight(WeightKind::constant), 1,
                                                   {0.9}, 50000, 1000, 7, 1);
    const QuantileTable t_e2l = estimate_quantiles(Scheme::ebel2,
                                                   make_weight(WeightKind::linear), 1,
                                                   {0.9}, 50000, 1000, 7, 1);
    const CalibrationLookup lookup = [&](Scheme s, WeightKind k) -> const QuantileTable* {
        if (s == Scheme::ebel1 && k == WeightKind::constant) return &t_e1c;
        if (s == Scheme::ebel2 && k == WeightKind::constant) return &t_e2c;
        if (s == Scheme::ebel2 && k == WeightKind::linear) return &t_e2l;
        return nullptr;
    };

    Verdict v;
    const auto cell = [&](const char* proc, const char* meth, double target,
                          double tol) {
        const CoverageReport rep = coverage_experiment(process(proc), 250,
                                                       {method(meth)}, 0.9, 1000, 11,
                                                       lookup, 1);
        const double cov = rep.cells[0].coverage;
        v.require(std::fabs(cov - target) <= tol,
                  std::string(proc) + " " + meth + " coverage " + num(cov) +
                      " outside " + num(target) + "+-" + num(tol));
    };
    cell("ma(0.4,-0.6)", "ebel1-constant", 90.6, 2.5);
    cell("ma(0.4,-0.6)", "ebel2-linear", 91.4, 2.5);
    cell("ar(-0.7)", "ebel1-constant", 89.2, 2.5);
    cell("ar(0.9)", "ebel1-constant", 67.0, 4.0);
    cell("ar(0.9)", "ebel2-constant", 79.0, 4.0);
    return v;
}

// ---- check 3: dual solver against a derivative-free search ----

Verdict check_solver_oracle() {
    Verdict v;
    long solved = 0;
    uint64_t stream = 0;
    while (solved < 1000 && stream < 100000) {
        RngStream rng(301, stream++);
        const int m = 2 + static_cast<int>(rng.uniform() * 5.0);
        PointSet ps;
        ps.m = m;
        ps.d = 1;
        ps.pts.resize(m);
        double lo = kInf, hi = -kInf, amax = 0.0;
        for (int i = 0; i < m; ++i) {
            ps.pts[i] = 4.0 * rng.uniform() - 2.0;
            lo = std::min(lo, ps.pts[i]);
            hi = std::max(hi, ps.pts[i]);
            amax = std::max(amax, std::fabs(ps.pts[i]));
        }
        // keep zero comfortably interior so the oracle is well conditioned
        if (!(lo < -0.05 * amax && hi > 0.05 * amax)) continue;
        ++solved;

        // golden-section maximization of the dual objective on the open
        // feasibility interval for the multiplier
        const auto obj = [&](double a) {
            double q = 0.0;
            for (int i = 0; i < m; ++i) q += std::log1p(a * ps.pts[i]);
            return q;
        };
        const double margin = 1e-12;
        double a_lo = -1.0 / hi + margin, a_hi = 1.0 / (-lo) - margin;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c1 = a_hi - gr * (a_hi - a_lo), c2 = a_lo + gr * (a_hi - a_lo);
        double f1 = obj(c1), f2 = obj(c2);
        for (int it = 0; it < 200; ++it) {
            if (f1 < f2) {
                a_lo = c1;
                c1 = c2;
                f1 = f2;
                c2 = a_lo + gr * (a_hi - a_lo);
                f2 = obj(c2);
            } else {
                a_hi = c2;
                c2 = c1;
                f2 = f1;
                c1 = a_hi - gr * (a_hi - a_lo);
                f1 = obj(c1);
            }
        }
        const double a_star = 0.5 * (a_lo + a_hi);
        const double ratio_star = -obj(a_star);

        const ELSolution sol = solve_el(ps);
        if (std::fabs(sol.lambda[0] - a_star) > 1e-6) {
            v.require(false, "instance " + std::to_string(stream - 1) +
                                 ": multiplier " + num(sol.lambda[0]) + " vs oracle " +
                                 num(a_star));
            break;
        }
        if (std::fabs(sol.log_ratio - ratio_star) > 1e-8) {
            v.require(false, "instance " + std::to_string(stream - 1) +
                                 ": log-ratio gap " +
                                 num(std::fabs(sol.log_ratio - ratio_star)));
            break;
        }
    }
    v.require(solved == 1000, "only " + std::to_string(solved) + " usable instances");
    return v;
}

// ---- check 4: unit-block BEL matches its chi-square(1) limit ----

Verdict check_bel_chisq() {
    const long reps = 2000;
    const int n = 1000;
    const ProcessSpec iid = process("iid-normal");
    const double crit = chisq_quantile(0.9, 1);
    double sum = 0.0;
    long exceed = 0;
    for (long r = 0; r < reps; ++r) {
        RngStream rng(4, static_cast<uint64_t>(r));
        const TimeSeries X = simulate_process(iid, n, rng);
        const double s = bel_statistic(X, {0.0}, 1);
        sum += s;
        if (s > crit) ++exceed;
    }
    const double mean = sum / reps;
    const double tail = 100.0 * static_cast<double>(exceed) / reps;
    Verdict v;
    v.require(std::fabs(mean - 1.0) <= 0.1,
              "statistic mean " + num(mean) + " outside 1.00+-0.10");
    v.require(std::fabs(tail - 10.0) <= 2.0,
              "upper-tail rate " + num(tail) + "% outside 10%+-2pp");
    return v;
}

// ---- check 5: finite-sample statistic law against the simulated limit ----

Verdict check_statistic_vs_limit() {
    const long reps = 20000;
    const int n = 1000;
    EbelConfig cfg;
    cfg.scheme = Scheme::ebel1;
    cfg.weight = make_weight(WeightKind::constant);

    const ProcessSpec iid = process("iid-normal");
    std::vector<double> stats(reps);
    for (long r = 0; r < reps; ++r) {
        RngStream rng(21, static_cast<uint64_t>(r));
        const TimeSeries X = simulate_process(iid, n, rng);
        stats[r] = ebel_statistic(X, {0.0}, cfg);
    }

    const std::vector<double> levels = {0.5, 0.9, 0.95};
    const QuantileTable t = estimate_quantiles(Scheme::ebel1, cfg.weight, 1, levels,
                                               reps, 1000, 22, 1);
    Verdict v;
    for (size_t li = 0; li < levels.size(); ++li) {
        double qd = 0.0, sed = 0.0;
        sample_quantile(stats, levels[li], 23 + li, qd, sed);
        const double ql = t.quantiles[li], sel = t.mc_stderr[li];
        if (qd == kInf && ql == kInf) continue;  // same +inf atom on both sides
        const double band = 3.0 * std::sqrt(sed * sed + sel * sel);
        v.require(std::fabs(qd - ql) <= band,
                  "level " + num(levels[li]) + ": data " + num(qd) + " vs limit " +
                      num(ql) + " (band " + num(band) + ")");
    }
    return v;
}

// ---- check 6: exact and near-exact invariances ----

Verdict check_invariances() {
    Verdict v;

    // (a) the weight scale never changes a statistic, bitwise
    for (int i = 0; i < 200 && v.ok; ++i) {
        RngStream rng(601, static_cast<uint64_t>(i));
        const int n = 50 + static_cast<int>(rng.uniform() * 100);
        TimeSeries X;
        X.n = n;
        X.d = 1;
        X.data.resize(n);
        double mean = 0.0;
        for (double& x : X.data) {
            x = rng.normal();
            mean += x;
        }
        mean /= n;
        const WeightKind kind = i % 3 == 0   ? WeightKind::constant
                                : i % 3 == 1 ? WeightKind::linear
                                             : WeightKind::cosine_bell;
        const double scale = std::exp(2.3 * (rng.uniform() - 0.5));
        const std::vector<double> mu{mean + 0.1 * (rng.uniform() - 0.5)};
        EbelConfig a, b;
        a.scheme = b.scheme = i % 2 ? Scheme::ebel1 : Scheme::ebel2;
        a.weight = make_weight(kind, 1.0);
        b.weight = make_weight(kind, scale);
        const double s1 = ebel_statistic(X, mu, a);
        const double s2 = ebel_statistic(X, mu, b);
        v.require(s1 == s2 || (s1 == kInf && s2 == kInf),
                  "weight-scale instance " + std::to_string(i));
    }

    // (b) affine maps of the data carry the statistic along within 1e-8
    for (int i = 0; i < 200 && v.ok; ++i) {
        RngStream rng(602, static_cast<uint64_t>(i));
        const int n = 50 + static_cast<int>(rng.uniform() * 100);
        TimeSeries X, Y;
        X.n = Y.n = n;
        X.d = Y.d = 1;
        X.data.resize(n);
        Y.data.resize(n);
        const double a = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + 2.5 * rng.uniform());
        const double b = 10.0 * (rng.uniform() - 0.5);
        double mean = 0.0;
        for (int j = 0; j < n; ++j) {
            X.data[j] = rng.normal();
            Y.data[j] = a * X.data[j] + b;
            mean += X.data[j];
        }
        mean /= n;
        EbelConfig cfg;
        cfg.scheme = i % 2 ? Scheme::ebel1 : Scheme::ebel2;
        cfg.weight = make_weight(i % 3 == 0 ? WeightKind::linear : WeightKind::constant);
        const double mu = mean + 0.2 * (rng.uniform() - 0.5);
        const double sx = ebel_statistic(X, {mu}, cfg);
        const double sy = ebel_statistic(Y, {a * mu + b}, cfg);
        if (sx == kInf || sy == kInf)
            v.require(sx == sy, "affine instance " + std::to_string(i) + " (hull)");
        else
            v.require(std::fabs(sx - sy) <= 1e-8 * (1.0 + std::fabs(sx)),
                      "affine instance " + std::to_string(i) + " gap " +
                          num(std::fabs(sx - sy)));
    }

    // (c) both data-driven block rules ignore location and positive scale
    for (int i = 0; i < 200 && v.ok; ++i) {
        RngStream rng(603, static_cast<uint64_t>(i));
        const int n = 50 + static_cast<int>(rng.uniform() * 250);
        TimeSeries X, Y;
        X.n = Y.n = n;
        X.d = Y.d = 1;
        X.data.resize(n);
        Y.data.resize(n);
        const double phi = 1.6 * (rng.uniform() - 0.5);
        const double shift = 20.0 * (rng.uniform() - 0.5);
        const double scale = std::exp(3.0 * (rng.uniform() - 0.5));
        double prev = 0.0;
        for (int j = 0; j < n; ++j) {
            prev = phi * prev + rng.normal();
            X.data[j] = prev;
            Y.data[j] = shift + scale * prev;
        }
        v.require(select_block_ftk(X).chosen_b == select_block_ftk(Y).chosen_b,
                  "flat-top rule instance " + std::to_string(i));
        v.require(select_block_aar(X).chosen_b == select_block_aar(Y).chosen_b,
                  "autoregressive rule instance " + std::to_string(i));
    }
    return v;
}

// ---- check 7: interval widths shrink like the square root of n ----

Verdict check_width_scaling() {
    const QuantileTable t = estimate_quantiles(Scheme::ebel1,
                                               make_weight(WeightKind::constant), 1,
                                               {0.9}, 20000, 1000, 71, 1);
    EbelConfig cfg;
    cfg.scheme = Scheme::ebel1;
    cfg.weight = make_weight(WeightKind::constant);
    cfg.level = 0.9;
    cfg.calibration = &t;

    const ProcessSpec proc = process("ar(0.5)");
    const auto median_width = [&](int n, uint64_t base) {
        std::vector<double> widths(500);
        for (long r = 0; r < 500; ++r) {
            RngStream rng(72, base + static_cast<uint64_t>(r));
            const TimeSeries X = simulate_process(proc, n, rng);
            const Interval iv = ebel_ci_mean(X, cfg);
            widths[r] = iv.hi - iv.lo;
        }
        std::nth_element(widths.begin(), widths.begin() + 250, widths.end());
        return widths[250];
    };
    const double w500 = median_width(500, 0);
    const double w2000 = median_width(2000, 1000000);
    const double ratio = w2000 / w500;
    Verdict v;
    v.require(ratio >= 0.40 && ratio <= 0.60,
              "median width ratio " + num(ratio) + " outside [0.40, 0.60] (" +
                  num(w2000) + "/" + num(w500) + ")");
    return v;
}

// ---- check 8: fixed-block coverage depends materially on the block length ----

Verdict check_block_sensitivity() {
    std::vector<MethodSpec> methods;
    for (int b = 2; b <= 30; ++b) methods.push_back(method("bel-b" + std::to_string(b)));
    const CoverageReport rep = coverage_experiment(process("ma(0.5,0.3)-normal"), 100,
                                                   methods, 0.9, 2000, 81,
                                                   CalibrationLookup{}, 1);
    double cmax = -kInf, cmin = kInf, se_max = 0.0, se_min = 0.0;
    for (const auto& cell : rep.cells) {
        if (cell.coverage > cmax) {
            cmax = cell.coverage;
            se_max = cell.stderr_pp;
        }
        if (cell.coverage < cmin) {
            cmin = cell.coverage;
            se_min = cell.stderr_pp;
        }
    }
    const double spread = cmax - cmin;
    const double band = 3.0 * std::sqrt(se_max * se_max + se_min * se_min);
    Verdict v;
    v.require(spread > band, "coverage spread " + num(spread) +
                                 "pp not beyond noise (" + num(band) + "pp); range [" +
                                 num(cmin) + ", " + num(cmax) + "]");
    return v;
}

using CheckFn = Verdict (*)();

const CheckFn kChecks[8] = {
    check_limit_percentiles, check_coverage_replication, check_solver_oracle,
    check_bel_chisq,         check_statistic_vs_limit,   check_invariances,
    check_width_scaling,     check_block_sensitivity,
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 8) {
            std::fprintf(stderr, "usage: %s [1..8]\n", argv[0]);
            return 2;
        }
    }
    bool all_ok = true;
    for (int k = 1; k <= 8; ++k) {
        if (only != 0 && k != only) continue;
        const Verdict v = kChecks[k - 1]();
        if (v.ok)
            std::printf("acceptance check %d/8: pass\n", k);
        else
            std::printf("acceptance check %d/8: FAIL (%s)\n", k, v.detail.c_str());
        all_ok = all_ok && v.ok;
    }
    return all_ok ? 0 : 1;
}

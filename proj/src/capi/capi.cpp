#include "ebel/ebel.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <stdexcept>
#include <vector>

#include "../core/bel.hpp"
#include "../core/el_core.hpp"
#include "../core/errors.hpp"
#include "../core/experiments.hpp"
#include "../core/inference.hpp"
#include "../core/limit_law.hpp"
#include "../core/processes.hpp"
#include "../core/special.hpp"
#include "../core/weights.hpp"

struct ebel_weight {
    ebel::WeightFn w;
};

struct ebel_table {
    ebel::QuantileTable t;
};

namespace {

template <typename F>
ebel_status guard(F&& f) {
    try {
        f();
        return EBEL_OK;
    } catch (const ebel::hull_violation&) {
        return EBEL_ERR_HULL;
    } catch (const ebel::degenerate_sample&) {
        return EBEL_ERR_DEGENERATE;
    } catch (const ebel::non_causal&) {
        return EBEL_ERR_NONCAUSAL;
    } catch (const ebel::profile_error&) {
        return EBEL_ERR_PROFILE;
    } catch (const std::invalid_argument&) {
        return EBEL_ERR_INVALID;
    } catch (const std::domain_error&) {
        return EBEL_ERR_INVALID;
    } catch (const std::bad_alloc&) {
        return EBEL_ERR_NUMERIC;
    } catch (const std::exception&) {
        return EBEL_ERR_NUMERIC;
    }
}

ebel::WeightKind to_kind(ebel_weight_kind kind) {
    switch (kind) {
        case EBEL_WEIGHT_CONSTANT: return ebel::WeightKind::constant;
        case EBEL_WEIGHT_LINEAR: return ebel::WeightKind::linear;
        case EBEL_WEIGHT_COSINE_BELL: return ebel::WeightKind::cosine_bell;
        case EBEL_WEIGHT_TABULATED: return ebel::WeightKind::tabulated;
    }
    throw std::invalid_argument("unknown weight kind");
}

ebel::Scheme to_scheme(ebel_scheme s) {
    if (s == EBEL_SCHEME_EBEL1) return ebel::Scheme::ebel1;
    if (s == EBEL_SCHEME_EBEL2) return ebel::Scheme::ebel2;
    throw std::invalid_argument("unknown scheme");
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

ebel::ProcessSpec to_process(const ebel_process* p) {
    require(p != nullptr, "null process");
    ebel::ProcessSpec spec;
    if (p->is_ma1star) {
        spec.kind = ebel::ProcessSpec::Kind::ma1star;
        return spec;
    }
    spec.kind = ebel::ProcessSpec::Kind::arma;
    require(p->n_phi >= 0 && p->n_theta >= 0, "negative coefficient count");
    require(p->n_phi == 0 || p->phi != nullptr, "null phi");
    require(p->n_theta == 0 || p->theta != nullptr, "null theta");
    spec.arma.phi.assign(p->phi, p->phi + p->n_phi);
    spec.arma.theta.assign(p->theta, p->theta + p->n_theta);
    switch (p->innovation) {
        case EBEL_INNOV_CHISQ1: spec.arma.innovation = ebel::Innovation::centered_chisq1; break;
        case EBEL_INNOV_NORMAL: spec.arma.innovation = ebel::Innovation::standard_normal; break;
        case EBEL_INNOV_BERNOULLI: spec.arma.innovation = ebel::Innovation::bernoulli_centered; break;
        case EBEL_INNOV_PARETO: spec.arma.innovation = ebel::Innovation::pareto_centered; break;
        default: throw std::invalid_argument("unknown innovation");
    }
    spec.arma.burn_in = p->burn_in < 0 ? 1000 : p->burn_in;
    return spec;
}

ebel::MethodSpec to_method(const ebel_method* m) {
    require(m != nullptr, "null method");
    ebel::MethodSpec spec;
    switch (m->family) {
        case 0: spec.family = ebel::MethodSpec::Family::ebel1; break;
        case 1: spec.family = ebel::MethodSpec::Family::ebel2; break;
        case 2: spec.family = ebel::MethodSpec::Family::bel; break;
        default: throw std::invalid_argument("unknown method family");
    }
    if (spec.family != ebel::MethodSpec::Family::bel) {
        spec.weight = to_kind(static_cast<ebel_weight_kind>(m->weight));
        require(spec.weight != ebel::WeightKind::tabulated,
                "tabulated weights not supported in experiment methods");
    } else {
        switch (m->block_rule) {
            case 0: spec.rule = ebel::BlockRule::fixed; break;
            case 1: spec.rule = ebel::BlockRule::ftk; break;
            case 2: spec.rule = ebel::BlockRule::aar; break;
            default: throw std::invalid_argument("unknown block rule");
        }
        if (spec.rule == ebel::BlockRule::fixed) {
            require(m->fixed_b >= 1, "fixed block length must be positive");
            spec.fixed_b = m->fixed_b;
        }
    }
    return spec;
}

ebel::TimeSeries to_series(const double* x, int n, int d) {
    require(x != nullptr, "null series");
    return ebel::make_series(x, n, d);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ebel::Interval interval_impl(const double* x, int n, ebel_scheme scheme,
                             const ebel_weight* w, const ebel::QuantileTable& table,
                             double level) {
    const ebel::TimeSeries X = to_series(x, n, 1);
    ebel::EbelConfig cfg;
    cfg.scheme = to_scheme(scheme);
    cfg.weight = w->w;
    cfg.level = level;
    cfg.calibration = &table;
    return ebel::ebel_ci_mean(X, cfg);
}

}  // namespace

extern "C" {

const char* ebel_status_message(ebel_status status) {
    switch (status) {
        case EBEL_OK: return "ok";
        case EBEL_ERR_INVALID: return "invalid argument or configuration";
        case EBEL_ERR_HULL: return "origin not interior to the convex hull of the points";
        case EBEL_ERR_DEGENERATE: return "degenerate sample";
        case EBEL_ERR_NONCAUSAL: return "AR polynomial root on or inside the unit circle";
        case EBEL_ERR_PROFILE: return "profile search failed to converge";
        case EBEL_ERR_NUMERIC: return "numerical failure";
    }
    return "unknown status";
}

ebel_status ebel_weight_create(ebel_weight_kind kind, double scale, ebel_weight** out) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = new ebel_weight{ebel::make_weight(to_kind(kind), scale)};
    });
}

ebel_status ebel_weight_create_tabulated(const double* knots_t, const double* knots_w,
                                         int n_knots, double scale, ebel_weight** out) {
    return guard([&] {
        require(out != nullptr && knots_t != nullptr && knots_w != nullptr, "null input");
        require(n_knots >= 2, "need at least 2 knots");
        std::vector<std::pair<double, double>> knots(n_knots);
        for (int i = 0; i < n_knots; ++i) knots[i] = {knots_t[i], knots_w[i]};
        *out = new ebel_weight{ebel::make_tabulated_weight(std::move(knots), scale)};
    });
}

ebel_status ebel_weight_eval(const ebel_weight* w, double t, double* out) {
    return guard([&] {
        require(w != nullptr && out != nullptr, "null input");
        *out = ebel::weight_eval(w->w, t);
    });
}

void ebel_weight_free(ebel_weight* w) { delete w; }

ebel_status ebel_solve_el(const double* pts, int m, int d, double tol, int max_iter,
                          double* lambda_out, double* log_ratio_out, double* probs_out,
                          int* iterations_out, int* converged_out) {
    return guard([&] {
        require(pts != nullptr && lambda_out != nullptr && log_ratio_out != nullptr,
                "null input");
        require(m >= 1 && d >= 1, "need m >= 1 and d >= 1");
        ebel::PointSet ps;
        ps.m = m;
        ps.d = d;
        ps.pts.assign(pts, pts + static_cast<size_t>(m) * d);
        ebel::ELOptions opt;
        if (tol > 0) opt.tol = tol;
        if (max_iter > 0) opt.max_iter = max_iter;
        const ebel::ELSolution sol = ebel::solve_el(ps, opt);
        for (int j = 0; j < d; ++j) lambda_out[j] = sol.lambda[j];
        *log_ratio_out = sol.log_ratio;
        if (probs_out)
            for (int i = 0; i < m; ++i) probs_out[i] = sol.probabilities[i];
        if (iterations_out) *iterations_out = sol.iterations;
        if (converged_out) *converged_out = sol.converged ? 1 : 0;
    });
}

ebel_status ebel_log_el_ratio(const double* pts, int m, int d, double* out) {
    return guard([&] {
        require(pts != nullptr && out != nullptr, "null input");
        require(m >= 1 && d >= 1, "need m >= 1 and d >= 1");
        ebel::PointSet ps;
        ps.m = m;
        ps.d = d;
        ps.pts.assign(pts, pts + static_cast<size_t>(m) * d);
        ebel::ELOptions opt;
        opt.tol = ebel::scaled_el_tol(ps);
        *out = ebel::log_el_ratio(ps, opt);
    });
}

ebel_status ebel_estimate_quantiles(ebel_scheme scheme, const ebel_weight* w, int d,
                                    const double* levels, int n_levels, long replicates,
                                    int grid_m, uint64_t seed, int threads,
                                    ebel_table** out) {
    return guard([&] {
        require(w != nullptr && levels != nullptr && out != nullptr, "null input");
        require(n_levels >= 1, "need at least one level");
        std::vector<double> lv(levels, levels + n_levels);
        *out = new ebel_table{ebel::estimate_quantiles(to_scheme(scheme), w->w, d, lv,
                                                       replicates, grid_m, seed, threads)};
    });
}

ebel_status ebel_table_quantile(const ebel_table* t, double level, double* quantile_out,
                                double* stderr_out) {
    return guard([&] {
        require(t != nullptr && quantile_out != nullptr, "null input");
        *quantile_out = ebel::table_quantile(t->t, level);
        if (stderr_out) {
            for (size_t i = 0; i < t->t.levels.size(); ++i)
                if (std::fabs(t->t.levels[i] - level) < 1e-12) *stderr_out = t->t.mc_stderr[i];
        }
    });
}

ebel_status ebel_table_hull_violations(const ebel_table* t, long* out) {
    return guard([&] {
        require(t != nullptr && out != nullptr, "null input");
        *out = t->t.hull_violations;
    });
}

ebel_status ebel_table_csv(const ebel_table* t, char** out) {
    return guard([&] {
        require(t != nullptr && out != nullptr, "null input");
        *out = dup_string(ebel::quantile_table_csv(t->t));
    });
}

void ebel_table_free(ebel_table* t) { delete t; }

void ebel_string_free(char* s) { std::free(s); }

ebel_status ebel_limit_draw(ebel_scheme scheme, const ebel_weight* w, int d, int m,
                            uint64_t seed, uint64_t stream, double* out) {
    return guard([&] {
        require(w != nullptr && out != nullptr, "null input");
        ebel::RngStream rng(seed, stream);
        *out = ebel::limit_draw(to_scheme(scheme), w->w, d, m, rng);
    });
}

ebel_status ebel_statistic(const double* x, int n, int d, const double* mu,
                           ebel_scheme scheme, const ebel_weight* w, double* out) {
    return guard([&] {
        require(mu != nullptr && w != nullptr && out != nullptr, "null input");
        const ebel::TimeSeries X = to_series(x, n, d);
        ebel::EbelConfig cfg;
        cfg.scheme = to_scheme(scheme);
        cfg.weight = w->w;
        *out = ebel::ebel_statistic(X, std::vector<double>(mu, mu + d), cfg);
    });
}

ebel_status ebel_bel_statistic(const double* x, int n, int d, const double* mu, int b,
                               double* out) {
    return guard([&] {
        require(mu != nullptr && out != nullptr, "null input");
        const ebel::TimeSeries X = to_series(x, n, d);
        *out = ebel::bel_statistic(X, std::vector<double>(mu, mu + d), b);
    });
}

ebel_status ebel_ci_mean(const double* x, int n, ebel_scheme scheme, const ebel_weight* w,
                         const ebel_table* calibration, double level, double* lo_out,
                         double* hi_out, int* degenerate_out) {
    return guard([&] {
        require(w != nullptr && calibration != nullptr && lo_out != nullptr &&
                    hi_out != nullptr,
                "null input");
        const ebel::Interval iv = interval_impl(x, n, scheme, w, calibration->t, level);
        *lo_out = iv.lo;
        *hi_out = iv.hi;
        if (degenerate_out) *degenerate_out = iv.degenerate ? 1 : 0;
    });
}

ebel_status ebel_ci_mean_threshold(const double* x, int n, ebel_scheme scheme,
                                   const ebel_weight* w, double threshold, double* lo_out,
                                   double* hi_out, int* degenerate_out) {
    return guard([&] {
        require(w != nullptr && lo_out != nullptr && hi_out != nullptr, "null input");
        require(std::isfinite(threshold) && threshold >= 0.0,
                "threshold must be finite and nonnegative");
        ebel::QuantileTable table;
        table.scheme = to_scheme(scheme);
        table.weight = w->w;
        table.d = 1;
        table.levels = {0.5};
        table.quantiles = {threshold};
        table.mc_stderr = {0.0};
        const ebel::Interval iv = interval_impl(x, n, scheme, w, table, 0.5);
        *lo_out = iv.lo;
        *hi_out = iv.hi;
        if (degenerate_out) *degenerate_out = iv.degenerate ? 1 : 0;
    });
}

ebel_status ebel_bel_ci_mean(const double* x, int n, int b, double level, double* lo_out,
                             double* hi_out, int* degenerate_out) {
    return guard([&] {
        require(lo_out != nullptr && hi_out != nullptr, "null input");
        const ebel::TimeSeries X = to_series(x, n, 1);
        const ebel::Interval iv = ebel::bel_ci_mean(X, b, level);
        *lo_out = iv.lo;
        *hi_out = iv.hi;
        if (degenerate_out) *degenerate_out = iv.degenerate ? 1 : 0;
    });
}

ebel_status ebel_region_member(const double* x, int n, int d, const double* mu,
                               ebel_scheme scheme, const ebel_weight* w,
                               const ebel_table* calibration, double level,
                               int* member_out) {
    return guard([&] {
        require(mu != nullptr && w != nullptr && calibration != nullptr &&
                    member_out != nullptr,
                "null input");
        const ebel::TimeSeries X = to_series(x, n, d);
        ebel::EbelConfig cfg;
        cfg.scheme = to_scheme(scheme);
        cfg.weight = w->w;
        cfg.level = level;
        cfg.calibration = &calibration->t;
        *member_out =
            ebel::ebel_region_member(X, std::vector<double>(mu, mu + d), cfg) ? 1 : 0;
    });
}

ebel_status ebel_statistic_smooth(const double* x, int n, int d, int p, ebel_map_fn H,
                                  ebel_jacobian_fn jac, void* ctx, const double* theta,
                                  ebel_scheme scheme, const ebel_weight* w, double* out) {
    return guard([&] {
        require(H != nullptr && theta != nullptr && w != nullptr && out != nullptr,
                "null input");
        const ebel::TimeSeries X = to_series(x, n, d);
        ebel::SmoothFunctionModel model;
        model.p = p;
        model.H = [H, ctx, p](const std::vector<double>& mu) {
            std::vector<double> r(p);
            H(mu.data(), r.data(), ctx);
            return r;
        };
        if (jac)
            model.jacobian = [jac, ctx, p, d](const std::vector<double>& mu) {
                std::vector<double> r(static_cast<size_t>(p) * d);
                jac(mu.data(), r.data(), ctx);
                return r;
            };
        ebel::EbelConfig cfg;
        cfg.scheme = to_scheme(scheme);
        cfg.weight = w->w;
        *out = ebel::ebel_statistic_smooth(X, model, std::vector<double>(theta, theta + p),
                                           cfg);
    });
}

ebel_status ebel_statistic_ef(const double* x, int n, int d, int p, ebel_ef_fn G,
                              void* ctx, const double* theta, ebel_scheme scheme,
                              const ebel_weight* w, double* out) {
    return guard([&] {
        require(G != nullptr && theta != nullptr && w != nullptr && out != nullptr,
                "null input");
        const ebel::TimeSeries X = to_series(x, n, d);
        ebel::EbelConfig cfg;
        cfg.scheme = to_scheme(scheme);
        cfg.weight = w->w;
        *out = ebel::ebel_statistic_ef(
            X, p,
            [G, ctx](const double* row, const double* th, double* o) { G(row, th, o, ctx); },
            std::vector<double>(theta, theta + p), cfg);
    });
}

ebel_status ebel_select_block(const double* x, int n, ebel_block_rule rule,
                              ebel_block_selection* out) {
    return guard([&] {
        require(out != nullptr, "null output");
        const ebel::TimeSeries X = to_series(x, n, 1);
        const ebel::BlockSelection sel =
            rule == EBEL_BLOCK_FTK ? ebel::select_block_ftk(X) : ebel::select_block_aar(X);
        out->chosen_b = sel.chosen_b;
        out->rho1 = sel.rho1;
        out->alpha1 = sel.alpha1;
        out->bandwidth = sel.bandwidth;
        out->g_hat = sel.g_hat;
        out->d_hat = sel.d_hat;
        out->c_hat = sel.c_hat;
    });
}

ebel_status ebel_simulate(const ebel_process* p, int n, uint64_t seed, uint64_t stream,
                          double* out) {
    return guard([&] {
        require(out != nullptr, "null output");
        const ebel::ProcessSpec spec = to_process(p);
        ebel::RngStream rng(seed, stream);
        const ebel::TimeSeries X = ebel::simulate_process(spec, n, rng);
        for (int i = 0; i < n; ++i) out[i] = X.data[i];
    });
}

ebel_status ebel_long_run_variance(const ebel_process* p, double* out) {
    return guard([&] {
        require(out != nullptr, "null output");
        *out = ebel::process_long_run_variance(to_process(p));
    });
}

ebel_status ebel_coverage(const ebel_process* p, int n, const ebel_method* methods,
                          int n_methods, double level, long replicates, uint64_t seed,
                          int threads, const ebel_table* const* calibrations,
                          double* coverage_out, double* stderr_out, char** csv_out) {
    return guard([&] {
        require(methods != nullptr && coverage_out != nullptr && stderr_out != nullptr,
                "null input");
        require(n_methods >= 1, "need at least one method");
        const ebel::ProcessSpec spec = to_process(p);
        std::vector<ebel::MethodSpec> ms(n_methods);
        for (int k = 0; k < n_methods; ++k) {
            ms[k] = to_method(&methods[k]);
            if (ms[k].family != ebel::MethodSpec::Family::bel)
                require(calibrations != nullptr && calibrations[k] != nullptr,
                        "EBEL method without calibration table");
        }
        auto lookup = [&](ebel::Scheme s, ebel::WeightKind k) -> const ebel::QuantileTable* {
            for (int i = 0; i < n_methods; ++i) {
                if (ms[i].family == ebel::MethodSpec::Family::bel) continue;
                const ebel::Scheme si = ms[i].family == ebel::MethodSpec::Family::ebel1
                                            ? ebel::Scheme::ebel1
                                            : ebel::Scheme::ebel2;
                if (si == s && ms[i].weight == k && calibrations && calibrations[i])
                    return &calibrations[i]->t;
            }
            return nullptr;
        };
        const ebel::CoverageReport rep = ebel::coverage_experiment(
            spec, n, ms, level, replicates, seed, lookup, threads);
        for (int k = 0; k < n_methods; ++k) {
            coverage_out[k] = rep.cells[k].coverage;
            stderr_out[k] = rep.cells[k].stderr_pp;
        }
        if (csv_out) *csv_out = dup_string(ebel::coverage_report_csv(rep));
    });
}

ebel_status ebel_power(const ebel_process* p, int n, const double* c_grid, int n_c,
                       const ebel_method* method, double level, long replicates,
                       uint64_t seed, int threads, const ebel_table* calibration,
                       double* raw_out, double* adjusted_out, char** csv_out) {
    return guard([&] {
        require(c_grid != nullptr && method != nullptr && raw_out != nullptr &&
                    adjusted_out != nullptr,
                "null input");
        require(n_c >= 1, "need at least one alternative");
        const ebel::ProcessSpec spec = to_process(p);
        const ebel::MethodSpec m = to_method(method);
        if (m.family != ebel::MethodSpec::Family::bel)
            require(calibration != nullptr, "EBEL method without calibration table");
        auto lookup = [&](ebel::Scheme, ebel::WeightKind) -> const ebel::QuantileTable* {
            return calibration ? &calibration->t : nullptr;
        };
        const ebel::PowerReport rep =
            ebel::power_curve(spec, n, std::vector<double>(c_grid, c_grid + n_c), m, level,
                              replicates, seed, lookup, threads);
        for (int i = 0; i < n_c; ++i) {
            raw_out[i] = rep.points[i].raw;
            adjusted_out[i] = rep.points[i].adjusted;
        }
        if (csv_out) *csv_out = dup_string(ebel::power_report_csv(rep));
    });
}

ebel_status ebel_chisq_quantile(double p, int dof, double* out) {
    return guard([&] {
        require(out != nullptr, "null output");
        require(p > 0.0 && p < 1.0 && dof >= 1, "need p in (0,1) and dof >= 1");
        *out = ebel::chisq_quantile(p, dof);
    });
}

}  // extern "C"

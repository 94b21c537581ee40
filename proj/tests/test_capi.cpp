#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "ebel/ebel.h"

// exercises the shared-library surface only: no internal headers

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// frozen 32-point series for the block-selection pins
const std::vector<double> kShort = {
    0.31, -1.24, 0.57,  2.02,  -0.73, 1.18,  0.24,  -0.41, 1.53,  -2.21, 0.86,
    0.12, -0.64, 1.41,  -0.92, 0.33,  -1.07, 0.78,  1.96,  -0.55, 0.41,  -1.32,
    0.69, 0.05,  -0.87, 1.22,  -0.18, 0.51,  -1.44, 0.93,  0.27,  -0.66};

struct Weight {
    ebel_weight* w = nullptr;
    explicit Weight(ebel_weight_kind kind, double scale = 1.0) {
        REQUIRE(ebel_weight_create(kind, scale, &w) == EBEL_OK);
    }
    ~Weight() { ebel_weight_free(w); }
};

std::vector<double> demo_series(int n) {
    // deterministic bounded sequence with nonzero variance
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = std::sin(0.7 * i) + 0.25 * std::cos(2.3 * i + 0.5);
    return x;
}

}  // namespace

TEST_CASE("status messages are stable strings") {
    CHECK(std::string(ebel_status_message(EBEL_OK)) == "ok");
    CHECK(std::string(ebel_status_message(EBEL_ERR_HULL)).find("hull") != std::string::npos);
    CHECK(std::string(ebel_status_message(static_cast<ebel_status>(99))) ==
          "unknown status");
}

TEST_CASE("weight handles: create, evaluate, free") {
    Weight c(EBEL_WEIGHT_CONSTANT, 2.0);
    double v = 0.0;
    CHECK(ebel_weight_eval(c.w, 0.3, &v) == EBEL_OK);
    CHECK(v == 2.0);

    Weight lin(EBEL_WEIGHT_LINEAR);
    CHECK(ebel_weight_eval(lin.w, 0.5, &v) == EBEL_OK);
    CHECK(v == 0.5);

    Weight cb(EBEL_WEIGHT_COSINE_BELL);
    CHECK(ebel_weight_eval(cb.w, 0.5, &v) == EBEL_OK);
    CHECK(v == 1.0);
    CHECK(ebel_weight_eval(cb.w, 1.0, &v) == EBEL_OK);
    CHECK(v == 0.0);

    CHECK(ebel_weight_eval(c.w, 1.5, &v) == EBEL_ERR_INVALID);  // outside [0,1]
    CHECK(ebel_weight_eval(nullptr, 0.5, &v) == EBEL_ERR_INVALID);

    ebel_weight* out = nullptr;
    CHECK(ebel_weight_create(EBEL_WEIGHT_CONSTANT, 0.0, &out) == EBEL_ERR_INVALID);
    CHECK(ebel_weight_create(EBEL_WEIGHT_TABULATED, 1.0, &out) == EBEL_ERR_INVALID);
    CHECK(ebel_weight_create(EBEL_WEIGHT_CONSTANT, 1.0, nullptr) == EBEL_ERR_INVALID);
    ebel_weight_free(nullptr);  // must be a no-op
}

TEST_CASE("tabulated weights interpolate the knots") {
    const double t[] = {0.0, 0.5, 1.0};
    const double w[] = {0.0, 1.0, 0.0};
    ebel_weight* tab = nullptr;
    REQUIRE(ebel_weight_create_tabulated(t, w, 3, 2.0, &tab) == EBEL_OK);
    double v = 0.0;
    CHECK(ebel_weight_eval(tab, 0.25, &v) == EBEL_OK);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));  // 2 * 0.5
    ebel_weight_free(tab);

    const double bad_t[] = {0.0, 0.4};  // does not reach 1
    ebel_weight* out = nullptr;
    CHECK(ebel_weight_create_tabulated(bad_t, w, 2, 1.0, &out) == EBEL_ERR_INVALID);
    CHECK(ebel_weight_create_tabulated(nullptr, w, 3, 1.0, &out) == EBEL_ERR_INVALID);
}

TEST_CASE("plain EL solve: pinned two-point problem and failure modes") {
    const double pts[] = {-1.0, 2.0};
    double lambda = 0.0, log_ratio = 0.0, probs[2] = {0, 0};
    int iters = 0, conv = 0;
    REQUIRE(ebel_solve_el(pts, 2, 1, 0.0, 0, &lambda, &log_ratio, probs, &iters, &conv) ==
            EBEL_OK);
    CHECK(conv == 1);
    CHECK(iters >= 1);
    CHECK(lambda == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(log_ratio == doctest::Approx(-std::log(9.0 / 8.0)).epsilon(1e-10));
    CHECK(probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const double one_sided[] = {1.0, 2.0};
    CHECK(ebel_solve_el(one_sided, 2, 1, 0.0, 0, &lambda, &log_ratio, nullptr, nullptr,
                        nullptr) == EBEL_ERR_HULL);
    CHECK(ebel_solve_el(nullptr, 2, 1, 0.0, 0, &lambda, &log_ratio, nullptr, nullptr,
                        nullptr) == EBEL_ERR_INVALID);
    CHECK(ebel_solve_el(pts, 0, 1, 0.0, 0, &lambda, &log_ratio, nullptr, nullptr,
                        nullptr) == EBEL_ERR_INVALID);

    double r = 0.0;
    CHECK(ebel_log_el_ratio(one_sided, 2, 1, &r) == EBEL_OK);
    CHECK(r == -kInf);
    const double sym[] = {-1.0, 1.0};
    CHECK(ebel_log_el_ratio(sym, 2, 1, &r) == EBEL_OK);
    CHECK(r == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("quantile tables over the C surface") {
    Weight w(EBEL_WEIGHT_CONSTANT);
    const double levels[] = {0.5, 0.9};
    ebel_table* t = nullptr;
    REQUIRE(ebel_estimate_quantiles(EBEL_SCHEME_EBEL2, w.w, 1, levels, 2, 2000, 120, 5, 1,
                                    &t) == EBEL_OK);
    double q50 = 0, q90 = 0, se = 0;
    CHECK(ebel_table_quantile(t, 0.5, &q50, nullptr) == EBEL_OK);
    CHECK(ebel_table_quantile(t, 0.9, &q90, &se) == EBEL_OK);
    CHECK(q50 > 0.0);
    CHECK(q90 > q50);
    CHECK(se > 0.0);
    CHECK(ebel_table_quantile(t, 0.25, &q50, nullptr) == EBEL_ERR_INVALID);  // absent level

    long viol = -1;
    CHECK(ebel_table_hull_violations(t, &viol) == EBEL_OK);
    CHECK(viol >= 0);

    char* csv = nullptr;
    REQUIRE(ebel_table_csv(t, &csv) == EBEL_OK);
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("scheme,weight,d,level,quantile,stderr,replicates,grid,seed",
                                 0) == 0);
    ebel_string_free(csv);
    ebel_table_free(t);

    ebel_table* bad = nullptr;
    CHECK(ebel_estimate_quantiles(EBEL_SCHEME_EBEL2, w.w, 1, levels, 0, 2000, 120, 5, 1,
                                  &bad) == EBEL_ERR_INVALID);
    CHECK(ebel_estimate_quantiles(EBEL_SCHEME_EBEL2, w.w, 1, levels, 2, 500, 120, 5, 1,
                                  &bad) == EBEL_ERR_INVALID);  // too few replicates
    CHECK(ebel_estimate_quantiles(EBEL_SCHEME_EBEL2, w.w, 1, levels, 2, 2000, 50, 5, 1,
                                  &bad) == EBEL_ERR_INVALID);  // grid too coarse
    CHECK(ebel_estimate_quantiles(static_cast<ebel_scheme>(7), w.w, 1, levels, 2, 2000,
                                  120, 5, 1, &bad) == EBEL_ERR_INVALID);
}

TEST_CASE("limit draws are reproducible by (seed, stream)") {
    Weight w(EBEL_WEIGHT_LINEAR);
    double a = 0, b = 0, c = 0;
    REQUIRE(ebel_limit_draw(EBEL_SCHEME_EBEL1, w.w, 1, 200, 9, 3, &a) == EBEL_OK);
    REQUIRE(ebel_limit_draw(EBEL_SCHEME_EBEL1, w.w, 1, 200, 9, 3, &b) == EBEL_OK);
    REQUIRE(ebel_limit_draw(EBEL_SCHEME_EBEL1, w.w, 1, 200, 9, 4, &c) == EBEL_OK);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a >= 0.0);
    CHECK(ebel_limit_draw(EBEL_SCHEME_EBEL1, w.w, 1, 99, 9, 3, &a) == EBEL_ERR_INVALID);
}

TEST_CASE("statistics through the C surface") {
    const std::vector<double> x = demo_series(80);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();

    Weight w(EBEL_WEIGHT_CONSTANT);
    double s1 = -1, s2 = -1;
    REQUIRE(ebel_statistic(x.data(), 80, 1, &mean, EBEL_SCHEME_EBEL1, w.w, &s1) == EBEL_OK);
    REQUIRE(ebel_statistic(x.data(), 80, 1, &mean, EBEL_SCHEME_EBEL2, w.w, &s2) == EBEL_OK);
    CHECK(s1 >= 0.0);
    CHECK(s2 >= 0.0);
    CHECK(std::isfinite(s1));
    CHECK(std::isfinite(s2));

    const double far = mean + 100.0;
    REQUIRE(ebel_statistic(x.data(), 80, 1, &far, EBEL_SCHEME_EBEL1, w.w, &s1) == EBEL_OK);
    CHECK(s1 == kInf);

    double b1 = -1;
    REQUIRE(ebel_bel_statistic(x.data(), 80, 1, &mean, 5, &b1) == EBEL_OK);
    CHECK(b1 >= 0.0);
    CHECK(std::isfinite(b1));
    CHECK(ebel_bel_statistic(x.data(), 80, 1, &mean, 0, &b1) == EBEL_ERR_INVALID);
    CHECK(ebel_bel_statistic(x.data(), 80, 1, &mean, 81, &b1) == EBEL_ERR_INVALID);
}

TEST_CASE("confidence intervals through the C surface") {
    const std::vector<double> x = demo_series(120);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    Weight w(EBEL_WEIGHT_CONSTANT);

    double lo = 0, hi = 0;
    int degen = -1;
    REQUIRE(ebel_ci_mean_threshold(x.data(), 120, EBEL_SCHEME_EBEL2, w.w, 2.5, &lo, &hi,
                                   &degen) == EBEL_OK);
    CHECK(degen == 0);
    CHECK(lo < mean);
    CHECK(hi > mean);

    double lo2 = 0, hi2 = 0;
    REQUIRE(ebel_ci_mean_threshold(x.data(), 120, EBEL_SCHEME_EBEL2, w.w, 3.5, &lo2, &hi2,
                                   nullptr) == EBEL_OK);
    CHECK(lo2 < lo);  // larger threshold widens the interval
    CHECK(hi2 > hi);

    // a vanishing threshold pins the interval to the profile minimum, even
    // though the forward-only statistic is positive at the sample mean itself
    const double phi_half[] = {0.5};
    ebel_process arp{};
    arp.phi = phi_half;
    arp.n_phi = 1;
    arp.burn_in = -1;
    std::vector<double> ar(120);
    REQUIRE(ebel_simulate(&arp, 120, 29, 0, ar.data()) == EBEL_OK);
    double tlo = 0, thi = 0;
    REQUIRE(ebel_ci_mean_threshold(ar.data(), 120, EBEL_SCHEME_EBEL1, w.w, 1e-9, &tlo,
                                   &thi, nullptr) == EBEL_OK);
    CHECK(thi - tlo >= 0.0);
    CHECK(thi - tlo < 1e-4);
    CHECK(ebel_ci_mean_threshold(x.data(), 120, EBEL_SCHEME_EBEL2, w.w, -1.0, &lo, &hi,
                                 nullptr) == EBEL_ERR_INVALID);

    // table-calibrated interval and region membership agree
    const double levels[] = {0.9};
    ebel_table* t = nullptr;
    REQUIRE(ebel_estimate_quantiles(EBEL_SCHEME_EBEL2, w.w, 1, levels, 1, 1500, 120, 6, 1,
                                    &t) == EBEL_OK);
    REQUIRE(ebel_ci_mean(x.data(), 120, EBEL_SCHEME_EBEL2, w.w, t, 0.9, &lo, &hi,
                         &degen) == EBEL_OK);
    CHECK(lo < mean);
    CHECK(hi > mean);
    int member = -1;
    REQUIRE(ebel_region_member(x.data(), 120, 1, &mean, EBEL_SCHEME_EBEL2, w.w, t, 0.9,
                               &member) == EBEL_OK);
    CHECK(member == 1);
    const double outside = hi + 0.5;
    REQUIRE(ebel_region_member(x.data(), 120, 1, &outside, EBEL_SCHEME_EBEL2, w.w, t, 0.9,
                               &member) == EBEL_OK);
    CHECK(member == 0);
    // calibration table scheme must match the requested scheme
    CHECK(ebel_ci_mean(x.data(), 120, EBEL_SCHEME_EBEL1, w.w, t, 0.9, &lo, &hi, &degen) ==
          EBEL_ERR_INVALID);
    ebel_table_free(t);

    // constant series: degenerate zero-width interval
    const std::vector<double> flat(60, 3.25);
    REQUIRE(ebel_ci_mean_threshold(flat.data(), 60, EBEL_SCHEME_EBEL1, w.w, 2.5, &lo, &hi,
                                   &degen) == EBEL_OK);
    CHECK(degen == 1);
    CHECK(lo == 3.25);
    CHECK(hi == 3.25);

    REQUIRE(ebel_bel_ci_mean(x.data(), 120, 6, 0.9, &lo, &hi, &degen) == EBEL_OK);
    CHECK(degen == 0);
    CHECK(lo < mean);
    CHECK(hi > mean);
}

TEST_CASE("smooth-function and estimating-function statistics") {
    const std::vector<double> x = demo_series(90);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    Weight w(EBEL_WEIGHT_CONSTANT);

    const auto identity = [](const double* mu, double* out, void*) { out[0] = mu[0]; };
    double plain = -1, smooth = -1;
    REQUIRE(ebel_statistic(x.data(), 90, 1, &mean, EBEL_SCHEME_EBEL1, w.w, &plain) ==
            EBEL_OK);
    REQUIRE(ebel_statistic_smooth(x.data(), 90, 1, 1, identity, nullptr, nullptr, &mean,
                                  EBEL_SCHEME_EBEL1, w.w, &smooth) == EBEL_OK);
    CHECK(smooth == plain);  // identity map must be exact

    const auto moment = [](const double* row, const double* th, double* out, void*) {
        out[0] = row[0] - th[0];
    };
    double ef = -1;
    REQUIRE(ebel_statistic_ef(x.data(), 90, 1, 1, moment, nullptr, &mean,
                              EBEL_SCHEME_EBEL1, w.w, &ef) == EBEL_OK);
    CHECK(ef == plain);  // the mean case is the same block construction

    const auto flat_map = [](const double*, double* out, void*) { out[0] = 0.0; };
    const double zero = 0.5;
    CHECK(ebel_statistic_smooth(x.data(), 90, 1, 1, flat_map, nullptr, nullptr, &zero,
                                EBEL_SCHEME_EBEL1, w.w, &smooth) == EBEL_ERR_PROFILE);
}

TEST_CASE("block selection pins and error statuses") {
    ebel_block_selection sel{};
    REQUIRE(ebel_select_block(kShort.data(), 32, EBEL_BLOCK_FTK, &sel) == EBEL_OK);
    CHECK(sel.chosen_b == 16);
    CHECK(sel.bandwidth == 2.0);
    CHECK(sel.c_hat == doctest::Approx(31.814233007126607).epsilon(1e-9));
    REQUIRE(ebel_select_block(kShort.data(), 32, EBEL_BLOCK_AAR, &sel) == EBEL_OK);
    CHECK(sel.chosen_b == 4);
    CHECK(sel.rho1 == doctest::Approx(-0.49661054881404704).epsilon(1e-10));

    const std::vector<double> flat(40, 1.0);
    CHECK(ebel_select_block(flat.data(), 40, EBEL_BLOCK_FTK, &sel) == EBEL_ERR_DEGENERATE);
    CHECK(ebel_select_block(kShort.data(), 10, EBEL_BLOCK_FTK, &sel) == EBEL_ERR_INVALID);
    CHECK(ebel_select_block(nullptr, 32, EBEL_BLOCK_FTK, &sel) == EBEL_ERR_INVALID);
}

TEST_CASE("process simulation and long-run variance") {
    const double phi_half[] = {0.5};
    ebel_process p{};
    p.phi = phi_half;
    p.n_phi = 1;
    p.innovation = EBEL_INNOV_CHISQ1;
    p.burn_in = -1;

    double lrv = 0.0;
    REQUIRE(ebel_long_run_variance(&p, &lrv) == EBEL_OK);
    CHECK(lrv == doctest::Approx(8.0).epsilon(1e-12));

    std::vector<double> x(200), y(200);
    REQUIRE(ebel_simulate(&p, 200, 17, 0, x.data()) == EBEL_OK);
    REQUIRE(ebel_simulate(&p, 200, 17, 0, y.data()) == EBEL_OK);
    CHECK(std::memcmp(x.data(), y.data(), 200 * sizeof(double)) == 0);
    REQUIRE(ebel_simulate(&p, 200, 17, 1, y.data()) == EBEL_OK);
    CHECK(std::memcmp(x.data(), y.data(), 200 * sizeof(double)) != 0);

    const double bad_phi[] = {1.5};
    ebel_process q{};
    q.phi = bad_phi;
    q.n_phi = 1;
    q.burn_in = -1;
    CHECK(ebel_long_run_variance(&q, &lrv) == EBEL_ERR_NONCAUSAL);
    CHECK(ebel_simulate(&q, 100, 1, 0, x.data()) == EBEL_ERR_NONCAUSAL);

    ebel_process star{};
    star.is_ma1star = 1;
    REQUIRE(ebel_long_run_variance(&star, &lrv) == EBEL_OK);
    CHECK(lrv == doctest::Approx(1.590179675922911).epsilon(1e-10));

    CHECK(ebel_simulate(nullptr, 100, 1, 0, x.data()) == EBEL_ERR_INVALID);
    CHECK(ebel_simulate(&p, 100, 1, 0, nullptr) == EBEL_ERR_INVALID);
}

TEST_CASE("coverage and power experiments through the C surface") {
    ebel_process p{};  // i.i.d. centered chi-square innovations
    p.innovation = EBEL_INNOV_NORMAL;
    p.burn_in = -1;

    ebel_method bel{};
    bel.family = 2;
    bel.block_rule = 0;
    bel.fixed_b = 4;

    double cov = 0, se = 0;
    char* csv = nullptr;
    REQUIRE(ebel_coverage(&p, 80, &bel, 1, 0.9, 300, 33, 1, nullptr, &cov, &se, &csv) ==
            EBEL_OK);
    CHECK(cov > 70.0);
    CHECK(cov < 100.0);
    CHECK(se > 0.0);
    REQUIRE(csv != nullptr);
    CHECK(std::string(csv).rfind("process,n,method,coverage,stderr", 0) == 0);
    ebel_string_free(csv);

    double raw[2] = {0, 0}, adj[2] = {0, 0};
    const double c_grid[2] = {0.0, 2.0};
    REQUIRE(ebel_power(&p, 80, c_grid, 2, &bel, 0.9, 300, 33, 1, nullptr, raw, adj,
                       nullptr) == EBEL_OK);
    CHECK(raw[0] == doctest::Approx(100.0 - cov).epsilon(1e-12));  // same seed, same series
    CHECK(adj[0] == 10.0);
    CHECK(raw[1] > raw[0]);

    // EBEL methods demand a calibration table
    ebel_method e1{};
    e1.family = 0;
    e1.weight = EBEL_WEIGHT_CONSTANT;
    CHECK(ebel_coverage(&p, 80, &e1, 1, 0.9, 100, 33, 1, nullptr, &cov, &se, nullptr) ==
          EBEL_ERR_INVALID);
    const ebel_table* none[1] = {nullptr};
    CHECK(ebel_coverage(&p, 80, &e1, 1, 0.9, 100, 33, 1, none, &cov, &se, nullptr) ==
          EBEL_ERR_INVALID);
    CHECK(ebel_power(&p, 80, c_grid, 2, &e1, 0.9, 100, 33, 1, nullptr, raw, adj,
                     nullptr) == EBEL_ERR_INVALID);

    ebel_method bad{};
    bad.family = 9;
    CHECK(ebel_coverage(&p, 80, &bad, 1, 0.9, 100, 33, 1, nullptr, &cov, &se, nullptr) ==
          EBEL_ERR_INVALID);
}

TEST_CASE("chi-square quantile utility") {
    double q = 0.0;
    REQUIRE(ebel_chisq_quantile(0.9, 1, &q) == EBEL_OK);
    CHECK(q == doctest::Approx(2.705543454095404).epsilon(1e-10));
    CHECK(ebel_chisq_quantile(1.2, 1, &q) == EBEL_ERR_INVALID);
    CHECK(ebel_chisq_quantile(0.9, 0, &q) == EBEL_ERR_INVALID);
    CHECK(ebel_chisq_quantile(0.9, 1, nullptr) == EBEL_ERR_INVALID);
}

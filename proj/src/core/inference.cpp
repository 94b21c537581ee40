#include "inference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "blocking.hpp"
#include "ci_search.hpp"
#include "el_core.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace ebel {

namespace {

double statistic_from_points(const PointSet& ps, int n) {
    ELOptions opt;
    opt.tol = scaled_el_tol(ps);
    return -log_el_ratio(ps, opt) / n;
}

std::vector<double> sample_mean(const TimeSeries& X) {
    std::vector<double> mu(X.d, 0.0);
    for (int i = 0; i < X.n; ++i)
        for (int j = 0; j < X.d; ++j) mu[j] += X.at(i, j);
    for (int j = 0; j < X.d; ++j) mu[j] /= X.n;
    return mu;
}

Eigen::MatrixXd model_jacobian(const SmoothFunctionModel& model,
                               const std::vector<double>& mu, int d) {
    Eigen::MatrixXd J(model.p, d);
    if (model.jacobian) {
        const std::vector<double> flat = model.jacobian(mu);
        if (static_cast<int>(flat.size()) != model.p * d)
            throw std::invalid_argument("Jacobian size mismatch");
        for (int r = 0; r < model.p; ++r)
            for (int c = 0; c < d; ++c) J(r, c) = flat[static_cast<size_t>(r) * d + c];
        return J;
    }
    std::vector<double> lo = mu, hi = mu;
    for (int c = 0; c < d; ++c) {
        const double h = 1e-6 * (1.0 + std::fabs(mu[c]));
        hi[c] = mu[c] + h;
        lo[c] = mu[c] - h;
        const std::vector<double> fh = model.H(hi), fl = model.H(lo);
        if (static_cast<int>(fh.size()) != model.p)
            throw std::invalid_argument("H output size mismatch");
        for (int r = 0; r < model.p; ++r) J(r, c) = (fh[r] - fl[r]) / (2.0 * h);
        hi[c] = mu[c];
        lo[c] = mu[c];
    }
    return J;
}

// Gauss-Newton retraction of `mu` onto {H(mu) = theta}. Iterates until the
// residual is exactly zero or stops improving (for affine H the final steps
// are exact subtractions, so the constrained point is hit bit-for-bit).
bool retract(const SmoothFunctionModel& model, const std::vector<double>& theta, int d,
             std::vector<double>& mu) {
    const double scale = 1.0 + std::sqrt(std::inner_product(
                                   theta.begin(), theta.end(), theta.begin(), 0.0));
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_mu = mu;
    int stall = 0;
    for (int it = 0; it < 60; ++it) {
        const std::vector<double> h = model.H(mu);
        Eigen::VectorXd resid(model.p);
        for (int r = 0; r < model.p; ++r) resid[r] = h[r] - theta[r];
        const double nrm = resid.norm();
        if (nrm < best) {
            best = nrm;
            best_mu = mu;
            stall = 0;
        } else if (++stall >= 2) {
            break;
        }
        if (nrm == 0.0) break;
        const Eigen::MatrixXd J = model_jacobian(model, mu, d);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.singularValues()[model.p - 1] < 1e-8) break;
        const Eigen::VectorXd step = svd.solve(resid);
        for (int c = 0; c < d; ++c) mu[c] -= step[c];
    }
    mu = best_mu;
    return best <= 1e-8 * scale;
}

// Nelder-Mead on f over R^k from x0 with initial simplex edge h.
double nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                   Eigen::VectorXd x0, double h, Eigen::VectorXd& best_x) {
    const int k = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> v(k + 1, x0);
    std::vector<double> fv(k + 1);
    for (int i = 1; i <= k; ++i) v[i][i - 1] += h;
    for (int i = 0; i <= k; ++i) fv[i] = f(v[i]);

    auto order = [&] {
        for (int i = 1; i <= k; ++i)
            for (int j = i; j > 0 && fv[j] < fv[j - 1]; --j) {
                std::swap(fv[j], fv[j - 1]);
                std::swap(v[j], v[j - 1]);
            }
    };
    order();
    const int max_iter = 400 * k;
    for (int it = 0; it < max_iter; ++it) {
        if (std::isfinite(fv[k]) && fv[k] - fv[0] <= 1e-7 * (1.0 + std::fabs(fv[0])))
            break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (int i = 0; i < k; ++i) centroid += v[i];
        centroid /= k;
        const Eigen::VectorXd xr = centroid + (centroid - v[k]);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - v[k]);
            const double fe = f(xe);
            if (fe < fr) { v[k] = xe; fv[k] = fe; } else { v[k] = xr; fv[k] = fr; }
        } else if (fr < fv[k - 1]) {
            v[k] = xr;
            fv[k] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + 0.5 * (v[k] - centroid);
            const double fc = f(xc);
            if (fc < fv[k]) {
                v[k] = xc;
                fv[k] = fc;
            } else {
                for (int i = 1; i <= k; ++i) {
                    v[i] = v[0] + 0.5 * (v[i] - v[0]);
                    fv[i] = f(v[i]);
                }
            }
        }
        order();
    }
    best_x = v[0];
    return fv[0];
}

}  // namespace

void check_calibration(const EbelConfig& cfg, int d) {
    if (!cfg.calibration) throw std::invalid_argument("missing calibration table");
    const QuantileTable& t = *cfg.calibration;
    if (t.scheme != cfg.scheme || t.weight.kind != cfg.weight.kind || t.d != d)
        throw std::invalid_argument("calibration table does not match the configuration");
    table_quantile(t, cfg.level);  // throws if the level is absent
}

double ebel_statistic(const TimeSeries& X, const std::vector<double>& mu,
                      const EbelConfig& cfg) {
    const WeightFn w = descaled(cfg.weight);  // statistics ignore the weight scale
    validate_weight(w);
    const PointSet ps = cfg.scheme == Scheme::ebel1
                            ? forward_block_sums(X, mu, w)
                            : forward_backward_block_sums(X, mu, w);
    return statistic_from_points(ps, X.n);
}

Interval ebel_ci_mean(const TimeSeries& X, const EbelConfig& cfg) {
    if (X.d != 1) throw std::invalid_argument("interval requires a scalar series");
    check_calibration(cfg, 1);
    const std::vector<double> mean = sample_mean(X);
    double ss = 0.0;
    for (int i = 0; i < X.n; ++i) {
        const double c = X.at(i, 0) - mean[0];
        ss += c * c;
    }
    const double sd = std::sqrt(ss / X.n);
    if (sd == 0.0) return Interval{mean[0], mean[0], true};
    const double a = table_quantile(*cfg.calibration, cfg.level);
    return bracket_ci([&](double mu) { return ebel_statistic(X, {mu}, cfg); }, mean[0],
                      sd, a, 1e-8 * sd);
}

bool ebel_region_member(const TimeSeries& X, const std::vector<double>& mu,
                        const EbelConfig& cfg) {
    check_calibration(cfg, X.d);
    return ebel_statistic(X, mu, cfg) <= table_quantile(*cfg.calibration, cfg.level);
}

double ebel_statistic_smooth(const TimeSeries& X, const SmoothFunctionModel& model,
                             const std::vector<double>& theta, const EbelConfig& cfg) {
    const int d = X.d, p = model.p;
    if (p < 1 || p > d) throw std::invalid_argument("need 1 <= p <= d");
    if (static_cast<int>(theta.size()) != p)
        throw std::invalid_argument("theta dimension mismatch");
    if (!model.H) throw std::invalid_argument("model lacks H");

    std::vector<double> mu0 = sample_mean(X);
    if (!retract(model, theta, d, mu0))
        throw profile_error("could not reach the constraint set from the sample mean");
    if (p == d) return ebel_statistic(X, mu0, cfg);

    const int k = d - p;
    const Eigen::MatrixXd J = model_jacobian(model, mu0, d);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    if (svd.singularValues()[p - 1] < 1e-8)
        throw profile_error("constraint Jacobian is rank deficient");
    const Eigen::MatrixXd N = svd.matrixV().rightCols(k);  // chart directions

    double sdavg = 0.0;
    const std::vector<double> mean = sample_mean(X);
    for (int j = 0; j < d; ++j) {
        double ss = 0.0;
        for (int i = 0; i < X.n; ++i) {
            const double c = X.at(i, j) - mean[j];
            ss += c * c;
        }
        sdavg += std::sqrt(ss / X.n);
    }
    sdavg /= d;
    const double h = std::max(1e-6, 2.0 * sdavg / std::sqrt(static_cast<double>(X.n)));

    auto objective = [&](const Eigen::VectorXd& u) {
        std::vector<double> mu = mu0;
        for (int j = 0; j < d; ++j)
            for (int c = 0; c < k; ++c) mu[j] += N(j, c) * u[c];
        if (!retract(model, theta, d, mu))
            return std::numeric_limits<double>::infinity();
        return ebel_statistic(X, mu, cfg);
    };

    double best = std::numeric_limits<double>::infinity();
    RngStream perturb(0x51A7157Cu, 0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Eigen::VectorXd u0 = Eigen::VectorXd::Zero(k);
        if (attempt > 0)
            for (int c = 0; c < k; ++c) u0[c] = h * perturb.normal();
        Eigen::VectorXd ubest;
        best = std::min(best, nelder_mead(objective, u0, h, ubest));
    }
    if (!std::isfinite(best))
        throw profile_error("profile search found no feasible point");
    return best;
}

double ebel_statistic_ef(const TimeSeries& X, int p, const EstimatingFunction& G,
                         const std::vector<double>& theta, const EbelConfig& cfg) {
    if (p < 1) throw std::invalid_argument("estimating function dimension must be positive");
    if (!G) throw std::invalid_argument("missing estimating function");
    TimeSeries U;
    U.n = X.n;
    U.d = p;
    U.data.resize(static_cast<size_t>(X.n) * p);
    std::vector<double> row(p);
    for (int i = 0; i < X.n; ++i) {
        G(&X.data[static_cast<size_t>(i) * X.d], theta.data(), row.data());
        for (int j = 0; j < p; ++j) {
            if (!std::isfinite(row[j]))
                throw std::invalid_argument("estimating function returned non-finite value");
            U.data[static_cast<size_t>(i) * p + j] = row[j];
        }
    }
    const std::vector<double> zero(p, 0.0);
    return ebel_statistic(U, zero, cfg);
}

}  // namespace ebel

#include "el_core.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace ebel {

namespace {

constexpr double kDegenerateMargin = 1e-12;

// Largest uniform probability floor: max eps s.t. sum q_i = 1, sum q_i T_i = 0,
// q_i >= eps. Substituting q_i = r_i + eps gives the LP
//   max eps  s.t.  sum r_i + m*eps = 1,  sum r_i T_i + eps*(sum T_i) = 0,  r, eps >= 0.
// Solved by a two-phase revised simplex with Bland's rule; the basis has d+1
// entries so each pivot is tiny. Returns 0 when infeasible (0 outside hull).
double positive_floor_lp(const PointSet& ps) {
    const int m = ps.m, d = ps.d;
    const int K = d + 1;             // equality constraints
    const int n_real = m + 1;        // r_1..r_m, eps
    const int n_total = n_real + K;  // plus artificials

    Eigen::VectorXd colsum = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) colsum[j] += ps.at(i, j);

    auto column = [&](int v, Eigen::VectorXd& out) {
        out.setZero(K);
        if (v < m) {
            out[0] = 1.0;
            for (int j = 0; j < d; ++j) out[j + 1] = ps.at(v, j);
        } else if (v == m) {
            out[0] = m;
            for (int j = 0; j < d; ++j) out[j + 1] = colsum[j];
        } else {
            out[v - n_real] = 1.0;
        }
    };

    Eigen::VectorXd b = Eigen::VectorXd::Zero(K);
    b[0] = 1.0;

    std::vector<int> basis(K);
    for (int j = 0; j < K; ++j) basis[j] = n_real + j;

    Eigen::MatrixXd B(K, K);
    Eigen::VectorXd col(K), cb(K), y(K), w(K), xb(K);
    const double tol = 1e-11;

    auto cost = [&](int phase, int v) {
        if (phase == 1) return v >= n_real ? 1.0 : 0.0;
        return v == m ? -1.0 : 0.0;  // phase 2: minimize -eps
    };

    for (int phase = 1; phase <= 2; ++phase) {
        const int max_pivots = 20 * (n_total + 5);
        for (int pivot = 0; pivot < max_pivots; ++pivot) {
            for (int j = 0; j < K; ++j) {
                column(basis[j], col);
                B.col(j) = col;
                cb[j] = cost(phase, basis[j]);
            }
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
            xb = lu.solve(b);
            y = lu.transpose().solve(cb);

            int enter = -1;
            for (int v = 0; v < n_real; ++v) {  // artificials never re-enter
                if (std::find(basis.begin(), basis.end(), v) != basis.end()) continue;
                column(v, col);
                if (cost(phase, v) - y.dot(col) < -tol) { enter = v; break; }  // Bland
            }
            if (enter < 0) break;

            column(enter, col);
            w = lu.solve(col);
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < K; ++j) {
                if (w[j] > tol) {
                    const double ratio = std::max(xb[j], 0.0) / w[j];
                    if (ratio < best - 1e-15 ||
                        (ratio < best + 1e-15 && (leave < 0 || basis[j] < basis[leave]))) {
                        best = ratio;
                        leave = j;
                    }
                }
            }
            if (leave < 0) break;  // unbounded; cannot happen (row 0 bounds eps)
            basis[leave] = enter;
        }
        if (phase == 1) {
            double art = 0.0;
            for (int j = 0; j < K; ++j)
                if (basis[j] >= n_real) art += std::max(xb[j], 0.0);
            if (art > 1e-9) return 0.0;  // no convex representation of 0 at all
        }
    }
    for (int j = 0; j < K; ++j)
        if (basis[j] == m) return std::max(xb[j], 0.0);
    return 0.0;  // eps nonbasic at its bound
}

int points_rank(const PointSet& ps) {
    Eigen::MatrixXd T(ps.m, ps.d);
    for (int i = 0; i < ps.m; ++i)
        for (int j = 0; j < ps.d; ++j) T(i, j) = ps.at(i, j);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(T);
    return static_cast<int>(qr.rank());
}

ELSolution solve_el_nd(const PointSet& ps, const ELOptions& opt) {
    const int m = ps.m, d = ps.d;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd g(d), s(d), r(m);
    Eigen::MatrixXd H(d, d);

    auto residuals = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
        double mn = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            double dot = 0.0;
            for (int j = 0; j < d; ++j) dot += v[j] * ps.at(i, j);
            out[i] = 1.0 + dot;
            mn = std::min(mn, out[i]);
        }
        return mn;
    };
    auto objective = [&](const Eigen::VectorXd& res) {
        double s0 = 0.0;
        for (int i = 0; i < m; ++i) s0 += std::log(res[i]);
        return -s0;
    };

    residuals(a, r);
    double obj = 0.0;
    int it = 0;
    double gnorm = 0.0;
    bool converged = false;
    Eigen::VectorXd r_try(m), a_try(d);

    for (; it < opt.max_iter; ++it) {
        g.setZero();
        for (int i = 0; i < m; ++i) {
            const double inv = 1.0 / r[i];
            for (int j = 0; j < d; ++j) g[j] -= ps.at(i, j) * inv;
        }
        gnorm = g.norm();
        if (gnorm <= opt.tol) { converged = true; break; }

        H.setZero();
        for (int i = 0; i < m; ++i) {
            const double inv2 = 1.0 / (r[i] * r[i]);
            for (int j = 0; j < d; ++j)
                for (int k = j; k < d; ++k) H(j, k) += ps.at(i, j) * ps.at(i, k) * inv2;
        }
        H = H.selfadjointView<Eigen::Upper>();

        double ridge = 0.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Eigen::MatrixXd Hr = H;
            if (ridge > 0.0) Hr.diagonal().array() += ridge;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Hr);
            s = ldlt.solve(-g);
            if (ldlt.info() == Eigen::Success && g.dot(s) < 0.0) break;
            ridge = ridge == 0.0 ? 1e-12 * (1.0 + H.trace() / d) : 100.0 * ridge;
            s = -g;  // steepest-descent fallback if all attempts fail
        }

        const double slope = g.dot(s);
        // Sufficient-decrease test with an allowance for the objective's own
        // floating-point noise; without it, full Newton steps near the optimum
        // are rejected (their true decrease is below one ulp of the objective)
        // and the iteration stalls short of the gradient tolerance.
        const double noise = 1e-15 * (1.0 + std::fabs(obj));
        double t = 1.0;
        bool stepped = false;
        for (int half = 0; half < 60; ++half) {
            a_try = a + t * s;
            const double mn = residuals(a_try, r_try);
            if (mn > 0.0) {
                const double obj_try = objective(r_try);
                if (obj_try <= obj + 1e-4 * t * slope + noise) {
                    a = a_try;
                    r = r_try;
                    obj = obj_try;
                    stepped = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!stepped) break;  // step collapsed; report best iterate
    }

    ELSolution sol;
    sol.lambda.assign(a.data(), a.data() + d);
    sol.iterations = it;
    sol.gradient_norm = gnorm;
    sol.converged = converged;
    double sum_log = 0.0;
    sol.probabilities.resize(m);
    for (int i = 0; i < m; ++i) {
        sum_log += std::log(r[i]);
        sol.probabilities[i] = 1.0 / (m * r[i]);
    }
    sol.log_ratio = -sum_log;
    return sol;
}

}  // namespace

bool hull_ok_1d(const double* f, int m, double* fmin_out, double* fmax_out) {
    double mn = f[0], mx = f[0];
    for (int i = 1; i < m; ++i) {
        mn = std::min(mn, f[i]);
        mx = std::max(mx, f[i]);
    }
    if (fmin_out) *fmin_out = mn;
    if (fmax_out) *fmax_out = mx;
    return mn < 0.0 && 0.0 < mx;
}

ScalarEL solve_el_1d(const double* f, int m, double tol, int max_iter) {
    double fmin, fmax;
    hull_ok_1d(f, m, &fmin, &fmax);
    // Open feasible interval for a: 1 + a f_i > 0 for every i.
    double blo = -1.0 / fmax, bhi = -1.0 / fmin;

    auto eval = [&](double x, double& phi, double& dphi) {
        phi = 0.0;
        dphi = 0.0;
        for (int i = 0; i < m; ++i) {
            const double u = f[i] / (1.0 + x * f[i]);
            phi += u;
            dphi -= u * u;
        }
    };

    ScalarEL out;
    double a = 0.0, phi, dphi;
    eval(a, phi, dphi);
    int it = 0;
    while (std::fabs(phi) > tol && it < max_iter) {
        if (phi > 0.0) blo = a; else bhi = a;  // phi is strictly decreasing
        double next = a - phi / dphi;
        if (!(next > blo && next < bhi)) next = 0.5 * (blo + bhi);
        if (next == a) break;  // bracket exhausted at double precision
        a = next;
        eval(a, phi, dphi);
        ++it;
        if (bhi - blo <= 4e-16 * std::max(std::fabs(blo), std::fabs(bhi))) break;
    }
    out.lambda = a;
    out.gradient = phi;
    out.iterations = it;
    out.converged = std::fabs(phi) <= tol;
    double sum_log = 0.0;
    for (int i = 0; i < m; ++i) sum_log += std::log1p(a * f[i]);
    out.sum_log = sum_log;
    return out;
}

double hull_margin(const PointSet& ps) {
    require_valid(ps);
    if (ps.d == 1) {
        double fmin, fmax;
        if (!hull_ok_1d(ps.pts.data(), ps.m, &fmin, &fmax)) return 0.0;
        const double scale = std::max(-fmin, fmax);
        return std::min(-fmin, fmax) / scale;
    }
    if (points_rank(ps) < ps.d) return 0.0;
    return positive_floor_lp(ps);
}

bool contains_origin_interior(const PointSet& ps) {
    require_valid(ps);
    if (ps.d == 1) {
        double fmin, fmax;
        return hull_ok_1d(ps.pts.data(), ps.m, &fmin, &fmax);
    }
    if (points_rank(ps) < ps.d) return false;
    return positive_floor_lp(ps) > 1e-13;
}

ELSolution solve_el(const PointSet& ps, const ELOptions& opt) {
    require_valid(ps);
    if (hull_margin(ps) <= kDegenerateMargin)
        throw hull_violation("origin not interior to the convex hull of the points");

    if (ps.d == 1) {
        const ScalarEL s = solve_el_1d(ps.pts.data(), ps.m, opt.tol, opt.max_iter);
        ELSolution sol;
        sol.lambda = {s.lambda};
        sol.log_ratio = -s.sum_log;
        sol.iterations = s.iterations;
        sol.gradient_norm = std::fabs(s.gradient);
        sol.converged = s.converged;
        sol.probabilities.resize(ps.m);
        for (int i = 0; i < ps.m; ++i)
            sol.probabilities[i] = 1.0 / (ps.m * (1.0 + s.lambda * ps.pts[i]));
        return sol;
    }
    return solve_el_nd(ps, opt);
}

double log_el_ratio(const PointSet& ps, const ELOptions& opt) {
    require_valid(ps);
    if (!contains_origin_interior(ps)) return -std::numeric_limits<double>::infinity();
    try {
        return solve_el(ps, opt).log_ratio;
    } catch (const hull_violation&) {
        return -std::numeric_limits<double>::infinity();  // near-degenerate margin
    }
}

}  // namespace ebel

#include "processes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "special.hpp"

namespace ebel {

namespace {

double draw_innovation(Innovation inn, RngStream& rng) {
    switch (inn) {
        case Innovation::centered_chisq1: {
            const double z = rng.normal();
            return z * z - 1.0;
        }
        case Innovation::standard_normal:
            return rng.normal();
        case Innovation::bernoulli_centered:
            return rng.uniform() < 0.5 ? -1.0 : 1.0;
        case Innovation::pareto_centered:
            // Pareto(3) on [1,inf): X = U^{-1/3}; mean 3/2, variance 3/4
            return std::pow(rng.uniform(), -1.0 / 3.0) - 1.5;
    }
    return 0.0;
}

}  // namespace

double innovation_variance(Innovation inn) {
    switch (inn) {
        case Innovation::centered_chisq1: return 2.0;
        case Innovation::standard_normal: return 1.0;
        case Innovation::bernoulli_centered: return 1.0;
        case Innovation::pareto_centered: return 0.75;
    }
    return 0.0;
}

std::string innovation_name(Innovation inn) {
    switch (inn) {
        case Innovation::centered_chisq1: return "chisq1";
        case Innovation::standard_normal: return "normal";
        case Innovation::bernoulli_centered: return "bernoulli";
        case Innovation::pareto_centered: return "pareto";
    }
    return "?";
}

bool innovation_from_string(const std::string& s, Innovation& out) {
    if (s == "chisq1") out = Innovation::centered_chisq1;
    else if (s == "normal") out = Innovation::standard_normal;
    else if (s == "bernoulli") out = Innovation::bernoulli_centered;
    else if (s == "pareto") out = Innovation::pareto_centered;
    else return false;
    return true;
}

void validate_arma(const ArmaSpec& spec) {
    if (spec.burn_in < 0) throw std::invalid_argument("burn-in must be nonnegative");
    for (double c : spec.phi)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite AR coefficient");
    for (double c : spec.theta)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite MA coefficient");
    const int p = static_cast<int>(spec.phi.size());
    if (p == 0) return;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) companion(0, i) = spec.phi[i];
    for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const auto eigs = companion.eigenvalues();
    for (int i = 0; i < p; ++i)
        if (std::abs(eigs[i]) >= 1.0 - 1e-12)
            throw non_causal("AR polynomial root on or inside the unit circle");
}

TimeSeries simulate_arma(const ArmaSpec& spec, int n, RngStream& rng) {
    validate_arma(spec);
    if (n < 1) throw std::invalid_argument("series length must be positive");
    const int p = static_cast<int>(spec.phi.size());
    const int q = static_cast<int>(spec.theta.size());
    std::vector<double> xhist(std::max(p, 1), 0.0);  // xhist[k] = X_{t-1-k}
    std::vector<double> ehist(std::max(q, 1), 0.0);

    TimeSeries out;
    out.n = n;
    out.d = 1;
    out.data.resize(n);
    const long total = static_cast<long>(spec.burn_in) + n;
    for (long t = 0; t < total; ++t) {
        const double eps = draw_innovation(spec.innovation, rng);
        double x = eps;
        for (int i = 0; i < p; ++i) x += spec.phi[i] * xhist[i];
        for (int j = 0; j < q; ++j) x += spec.theta[j] * ehist[j];
        if (p > 0) {
            for (int i = p - 1; i > 0; --i) xhist[i] = xhist[i - 1];
            xhist[0] = x;
        }
        if (q > 0) {
            for (int j = q - 1; j > 0; --j) ehist[j] = ehist[j - 1];
            ehist[0] = eps;
        }
        if (t >= spec.burn_in) out.data[t - spec.burn_in] = x;
    }
    return out;
}

double ma1_star_threshold() {
    static const double q = chisq_quantile(0.8, 1);
    return q;
}

TimeSeries simulate_ma1_star(int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("series length must be positive");
    const double q = ma1_star_threshold();
    TimeSeries out;
    out.n = n;
    out.d = 1;
    out.data.resize(n);
    double z = rng.normal();
    double prev = z * z;  // eps_0
    for (int t = 0; t < n; ++t) {
        z = rng.normal();
        const double eps = z * z;
        out.data[t] = eps + (prev < q ? 0.5 : 0.0) - 1.4;
        prev = eps;
    }
    return out;
}

double long_run_variance(const ArmaSpec& spec) {
    validate_arma(spec);
    double sphi = 0.0, stheta = 0.0;
    for (double c : spec.phi) sphi += c;
    for (double c : spec.theta) stheta += c;
    const double num = 1.0 + stheta;
    const double den = 1.0 - sphi;
    return innovation_variance(spec.innovation) * (num * num) / (den * den);
}

double ma1_star_long_run_variance() {
    // var(X) = 2 + 0.25*0.8*0.2; cov(X_t, X_{t+1}) = 0.5*(F_chisq3(q) - 0.8)
    const double q = ma1_star_threshold();
    return 2.04 + (chisq_cdf(q, 3) - 0.8);
}

}  // namespace ebel

#pragma once

#include <string>
#include <vector>

#include "common.hpp"
#include "rng.hpp"

namespace ebel {

enum class Innovation { centered_chisq1, standard_normal, bernoulli_centered, pareto_centered };

double innovation_variance(Innovation inn);
std::string innovation_name(Innovation inn);
bool innovation_from_string(const std::string& s, Innovation& out);

struct ArmaSpec {
    std::vector<double> phi;    // X_t = sum phi_i X_{t-i} + eps_t + sum theta_j eps_{t-j}
    std::vector<double> theta;
    Innovation innovation = Innovation::centered_chisq1;
    int burn_in = 1000;
};

// Throws non_causal unless all AR companion eigenvalues lie inside the unit circle.
void validate_arma(const ArmaSpec& spec);

TimeSeries simulate_arma(const ArmaSpec& spec, int n, RngStream& rng);

// X_t = eps_t + 0.5 * I(eps_{t-1} < q) - 1.4 with eps ~ chi-square(1) i.i.d.
// and q its 0.8 quantile; the mean is exactly 0.
TimeSeries simulate_ma1_star(int n, RngStream& rng);

double ma1_star_threshold();

// Sum of all autocovariances: var_eps * (1 + sum theta)^2 / (1 - sum phi)^2.
// Returns 0 for degenerate specs (callers needing positivity must reject).
double long_run_variance(const ArmaSpec& spec);

double ma1_star_long_run_variance();

}  // namespace ebel

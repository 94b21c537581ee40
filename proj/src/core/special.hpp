#pragma once

namespace ebel {

// Standard normal inverse CDF (Wichura's PPND16 rational approximations,
// absolute error below 1e-15 over (0,1)).
double norm_ppf(double p);

// Regularized lower incomplete gamma P(a, x), accurate to ~1e-14.
double gamma_p(double a, double x);

double chisq_cdf(double x, int dof);

// Inverse chi-square CDF, |F(q)-p| <= 1e-10.
double chisq_quantile(double p, int dof);

}  // namespace ebel

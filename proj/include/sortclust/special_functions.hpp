#pragma once

namespace sortclust {

/// log Gamma(x) for x > 0 (Lanczos approximation, relative error below 1e-13).
double log_gamma(double x);

/// Regularized incomplete beta I_s(a, b) for s in [0, 1], a, b > 0.
double reg_inc_beta(double s, double a, double b);

/// Regularized lower incomplete gamma P(a, x) for x >= 0, a > 0.
double reg_inc_gamma_lower(double x, double a);

/// Chi-squared CDF with `dof` degrees of freedom.
double chi_squared_cdf(double x, double dof);

}  // namespace sortclust

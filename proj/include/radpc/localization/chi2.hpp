#pragma once

namespace radpc {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Chi-squared CDF with dof degrees of freedom.
double chi2_cdf(double x, int dof);

/// Chi-squared quantile by numeric inversion of the CDF (bisection).
/// p in (0, 1). quantile(3, 0.95) lands on 7.8147 to within 1e-3.
double chi2_quantile(int dof, double p);

}  // namespace radpc

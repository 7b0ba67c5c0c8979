#pragma once

namespace radperturb {

/// Regularised incomplete beta function I_x(a, b), continued-fraction
/// evaluation accurate to ~1e-14 for the parameter ranges used here.
double regularised_incomplete_beta(double a, double b, double x);

/// CDF of the F distribution with df1, df2 degrees of freedom.
double f_cdf(double x, double df1, double df2);

/// Quantile of the F distribution (inverse CDF), p in (0, 1).
double f_quantile(double p, double df1, double df2);

}  // namespace radperturb

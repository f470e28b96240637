#pragma once

namespace nightgrid {

/// Regularized incomplete beta function I_x(a, b), evaluated with the
/// modified Lentz continued fraction (absolute error well below 1e-10).
/// Requires a > 0, b > 0 and 0 <= x <= 1; throws std::domain_error otherwise.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of Student's t with `dof` degrees of freedom:
/// 2 (1 - CDF_t(|t|, dof)).
double t_pvalue(double t, double dof);

/// Upper-tail p-value of an F statistic with (d1, d2) degrees of freedom.
double f_pvalue(double f, double d1, double d2);

}  // namespace nightgrid

#pragma once

namespace claimsim {

/// Standard normal distribution function.
double normal_cdf(double x);

/// Standard normal quantile, Wichura's AS 241 rational approximation
/// (absolute error below 1e-15 across (0, 1)). Arguments outside (0, 1)
/// throw std::domain_error.
double normal_quantile(double p);

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation with the usual symmetry switch at x = (a+1)/(a+b+2).
double incomplete_beta(double a, double b, double x);

/// Inverse of incomplete_beta in x: smallest x with I_x(a, b) = p.
/// Halley iteration from a moment-based starting point.
double incomplete_beta_inverse(double a, double b, double p);

} // namespace claimsim

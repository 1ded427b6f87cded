#pragma once

// Scalar distribution functions used by the tests and diagnostics.

namespace hdalpha {

/// Standard normal CDF.
double normal_cdf(double x);
/// Standard normal upper tail 1 - Phi(x), accurate far into the right tail.
double normal_sf(double x);

/// Limiting law of the centered max statistic: F(x) = exp(-exp(-x/2) / sqrt(pi)).
double gumbel_limit_cdf(double x);
/// 1 - F(x) without cancellation for large x.
double gumbel_limit_sf(double x);
/// q_gamma with F(q_gamma) = 1 - gamma. Throws for gamma outside (0, 1).
double gumbel_limit_quantile(double gamma);

/// Standard Cauchy CDF G(x) = 1/2 + atan(x)/pi.
double cauchy_cdf(double x);
/// 1 - G(x), computed as atan(1/x)/pi for positive x.
double cauchy_sf(double x);

/// Upper tail of the chi-square law with `df` degrees of freedom.
double chi_square_sf(double q, int df);

}  // namespace hdalpha

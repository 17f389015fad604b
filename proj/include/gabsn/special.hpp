#pragma once

// Normal-distribution special functions and Owen's T.

namespace gabsn {

double norm_pdf(double x);
/// Phi(x), computed from erfc so that both tails keep relative accuracy.
double norm_cdf(double x);
/// 1 - Phi(x)
double norm_sf(double x);
/// log Phi(x); asymptotic expansion below x = -35 where erfc underflows.
double log_norm_cdf(double x);
/// phi(x) / Phi(x), finite for all finite x.
double inv_mills(double x);

/// Owen's T function T(h, a) = 1/(2 pi) int_0^a exp(-h^2 (1 + x^2) / 2) / (1 + x^2) dx.
///
/// Arguments are reduced to h >= 0, 0 <= a <= 1 with the usual symmetry and
/// reciprocal identities; the reduced integral is evaluated by composite
/// 20-point Gauss-Legendre with one panel per unit of h*a. Absolute error is
/// below 1e-15 over the whole plane.
double owens_t(double h, double a);

/// Skew-normal CDF Phi(z; lambda) = Phi(z) - 2 T(z, lambda).
double sn_cdf(double z, double lambda);

}  // namespace gabsn

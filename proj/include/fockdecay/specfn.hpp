#pragma once

// Special-function kernel: Laguerre polynomials, log-binomials, integer-order
// upper incomplete gamma and the Bessel function J0.

namespace fockdecay::specfn {

/// L_n(x) by upward three-term recurrence. Throws DomainError for x < 0 or
/// non-finite x.
double laguerre(int n, double x);

/// ln C(n, k) via lgamma. Throws DomainError unless 0 <= k <= n.
double log_binomial(int n, int k);

/// Gamma(k+1, s) = \int_s^\infty u^k e^{-u} du for integer k, using the finite
/// sum k! e^{-s} sum_{j<=k} s^j/j!. Exact k! at s = 0.
double upper_incomplete_gamma(int k, double s);

/// Bessel J0 for x >= 0. Power series below 1, Miller backward recurrence
/// normalised by J0 + 2 sum J_{2k} = 1 above.
double bessel_j0(double x);

}  // namespace fockdecay::specfn

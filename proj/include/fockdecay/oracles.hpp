#pragma once

// Independent numerical validators for the closed forms in states/metrics:
// population rate equations integrated by RK4, Hankel inversion of the
// characteristic function, the finite-difference residual of its diffusion
// equation, the alternating binomial identity, and phase-space purity.

#include <cstdint>
#include <span>
#include <vector>

#include "fockdecay/states.hpp"

namespace fockdecay::oracles {

/// Radius in the transform plane, ell = sqrt(xt^2 + pt^2); |lambda|^2 = ell^2 / 2.
struct TransformPoint {
  double ell = 0.0;
  double lambda2() const { return 0.5 * ell * ell; }
};

struct OdeConfig {
  int dim = 0;        // levels kept; must be >= n + 1
  double dt = 1e-3;   // fixed RK4 step in tau units, <= 0.01
};

struct OdeResult {
  std::vector<double> populations;
  double max_norm_drift = 0.0;  // max_k-step |sum p - 1|
  int steps = 0;
};

/// Integrates dp_k/dtau = (nbar+1)[(k+1) p_{k+1} - k p_k] + nbar[k p_{k-1} - (k+1) p_k]
/// from p = delta_{k,n}. The top level has no upward channel, so the
/// truncated system conserves probability.
/// Throws DomainError on bad config (dim < n+1, dt > 0.01) and
/// TruncationError when nbar > 0 and the top level ever holds more than 1e-8.
OdeResult integrate_lindblad(int n, double tau, double nbar, const OdeConfig& cfg);

std::vector<double> lindblad_populations(int n, double tau, double nbar, const OdeConfig& cfg);

/// W(r) = (1/2pi) \int_0^inf ell J0(ell r) chi(ell^2/2) d ell, truncated where
/// the characteristic function drops below 1e-14, adaptive tolerance 1e-10.
double hankel_wigner(const DecoherenceParams& params, double r);

/// Max over the grid of |d chi/dtau + 1/2 [xt chi_xt + pt chi_pt + (1/2 + nbar)(xt^2 + pt^2) chi]|,
/// all derivatives by central differences with step 1e-4. Requires tau > 1e-4
/// and 0 <= ell <= 10 on every grid point.
double diffusion_residual(int n, double tau, double nbar, std::span<const TransformPoint> grid,
                          ChiForm form = ChiForm::corrected);

/// sum_{k=a}^{b} (-1)^{k+a} C(b,k) C(k,a) in exact 64-bit arithmetic.
/// Throws OverflowError for b > 30.
std::int64_t alternating_binomial_identity(int a, int b);

/// 2 pi \iint W^2 dx dp = 2 pi^2 \int_0^inf W(s)^2 ds by adaptive quadrature.
double phase_space_purity(int n, double tau);

/// \iint W dx dp = pi \int_0^inf W(s) ds by adaptive quadrature.
double phase_space_norm(int n, double tau);

}  // namespace fockdecay::oracles

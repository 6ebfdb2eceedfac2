#pragma once

#include <functional>

namespace fockdecay::quad {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // Kronrod - Gauss discrepancy summed over panels
  int subdivisions = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_subdivisions = 20000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// The interval is first cut into `initial_panels` equal pieces, which helps
/// with oscillatory integrands whose structure the caller knows roughly.
/// Non-convergence is reported through `converged`, not thrown.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {}, int initial_panels = 1);

}  // namespace fockdecay::quad

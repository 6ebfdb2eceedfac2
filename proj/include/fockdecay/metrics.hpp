#pragma once

// Negative volume of the decohered Wigner function and the quantumness
// peak across initial Fock levels.
//
// With s = r^2 the Wigner function is W = e^{-s} Q(2s) / pi, where
// Q(u) = sum_m (-1)^m c_m L_m(u). The plane integral of the negative part
// reduces to eta = \int_0^\infty e^{-s} max(0, -Q(2s)) ds.

#include <span>
#include <string>
#include <vector>

namespace fockdecay {

struct RadialPolynomial {
  int degree = 0;
  std::vector<double> coeffs;            // monomial q_0..q_degree
  std::vector<double> laguerre_weights;  // b_m with Q = sum b_m L_m; empty for plain polynomials
  std::vector<double> roots;             // sorted positive sign changes of Q

  /// Plain polynomial in the monomial basis; roots are not filled in.
  static RadialPolynomial from_monomial(std::vector<double> coeffs);

  /// Q(u). Uses the Laguerre recurrence when weights are known, Horner otherwise.
  double evaluate(double u) const;

  /// Upper end of the root search window, 2 (4 degree + 20).
  double search_limit() const { return 2.0 * (4.0 * degree + 20.0); }
};

/// Q for the zero-temperature state (n, tau), with monomial coefficients and
/// isolated sign roots. Throws RangeError outside n <= 50, tau <= 50 and
/// ConvergenceError if root refinement fails.
RadialPolynomial radial_polynomial(int n, double tau);

/// Sign-change roots of Q on (0, search_limit()], each refined by bisection to
/// 1e-12 absolute. Roots are isolated by a derivative cascade: between two
/// consecutive sign changes of Q' the polynomial is monotone.
std::vector<double> find_sign_roots(const RadialPolynomial& poly);

enum class EtaMethod { semi_analytic, quadrature };

std::string to_string(EtaMethod method);

struct EtaResult {
  double value = 0.0;
  EtaMethod method = EtaMethod::semi_analytic;
  double error_estimate = 0.0;
};

struct EtaOptions {
  /// Skip the semi-analytic path and integrate adaptively.
  bool force_quadrature = false;
  /// Absolute tolerance for the quadrature path.
  double quad_tol = 1e-10;
};

/// Negative volume eta(n, tau). The semi-analytic path integrates exactly
/// between consecutive roots; if root refinement fails it falls back to
/// adaptive quadrature and says so in `method`.
EtaResult negative_volume(int n, double tau, const EtaOptions& opts = {});

/// Same quantity through the monomial expansion and integer-order incomplete
/// gamma antiderivatives. Loses accuracy to cancellation as n grows (about
/// 3^n eps); kept as a third route for small n.
double negative_volume_monomial(int n, double tau);

struct SweepCell {
  bool ok = false;
  EtaResult eta;
  double purity = 0.0;
  std::string error;  // set when !ok
};

/// Rectangular (tau, n) table stored tau-major.
struct SweepTable {
  std::vector<int> n_values;
  std::vector<double> tau_values;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t tau_index, std::size_t n_index) const {
    return cells[tau_index * n_values.size() + n_index];
  }
  bool all_ok() const;
};

/// Evaluates every (tau, n) cell independently, in parallel. Failures are
/// recorded per cell; the sweep always completes.
SweepTable eta_sweep(std::span<const int> n_values, std::span<const double> tau_values,
                     const EtaOptions& opts = {}, unsigned threads = 0);
SweepTable eta_sweep(int n_max, std::span<const double> tau_values,
                     const EtaOptions& opts = {}, unsigned threads = 0);

struct PeakResult {
  int n_star = 0;
  bool boundary = false;  // argmax sits at the first or last n of the scan
  double eta_at_peak = 0.0;
};

/// Argmax of eta over a scan of consecutive levels; ties go to the smaller n.
PeakResult peak_of(std::span<const int> n_values, std::span<const double> eta_values);

/// argmax_{0 <= n <= n_max} eta(n, tau). Requires tau > 0. Throws the first
/// cell failure, if any.
PeakResult peak_state(double tau, int n_max, const EtaOptions& opts = {});

/// Peak per tau over one shared sweep.
std::vector<PeakResult> peak_curve(std::span<const double> tau_values, int n_max,
                                   const EtaOptions& opts = {});

}  // namespace fockdecay

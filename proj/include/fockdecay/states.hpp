#pragma once

// Decohering Fock states of a damped harmonic oscillator.
//
// All time dependence enters through tau = gamma * t. At zero temperature a
// state started in |n> stays diagonal and its Wigner function is the mixture
//   W(x, p, tau) = sum_m c_m(tau) W_m(x, p),
//   c_m = C(n, m) e^{-n tau} (e^{tau} - 1)^{n-m},
// where W_m is the static Fock Wigner function (-1)^m e^{-r^2} L_m(2 r^2) / pi.
// The weights c_m are the level populations p_m(tau).

#include <span>
#include <vector>

namespace fockdecay {

inline constexpr int kMaxLevel = 50;
inline constexpr double kMaxTau = 50.0;

struct DecoherenceParams {
  int n = 0;
  double tau = 0.0;
  double nbar = 0.0;

  /// Throws DomainError for negative or non-finite values, RangeError beyond
  /// n = 50 or tau = 50.
  void validate() const;
};

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
  double r2() const { return x * x + p * p; }
};

/// Immutable zero-temperature mixture. The Laguerre-basis weights
/// b_m = (-1)^m c_m are cached so evaluation is a single series sum.
class MixtureState {
 public:
  /// Throws UnsupportedParameter if params.nbar > 0.
  explicit MixtureState(const DecoherenceParams& params);

  const DecoherenceParams& params() const { return params_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> laguerre_weights() const { return signed_; }

  /// W at squared radius r2 = x^2 + p^2.
  double wigner_radial(double r2) const;
  double wigner(PhasePoint point) const { return wigner_radial(point.r2()); }

  /// Batch form over squared radii; dispatches to the SIMD kernel and is
  /// bit-identical to calling wigner_radial per element.
  void wigner_radial(std::span<const double> r2, std::span<double> out) const;

 private:
  DecoherenceParams params_;
  std::vector<double> weights_;
  std::vector<double> signed_;
};

/// c_0..c_n, assembled as exp(ln C(n,m) - n tau + (n-m) ln(e^tau - 1)).
std::vector<double> mixture_coefficients(int n, double tau);

/// Static Fock Wigner function ((-1)^n / pi) e^{-r^2} L_n(2 r^2).
double wigner_static(int n, PhasePoint point);

/// Zero-temperature Wigner function. Throws UnsupportedParameter when
/// params.nbar > 0; use oracles::hankel_wigner there.
double wigner_t(const DecoherenceParams& params, PhasePoint point);

enum class ChiForm {
  corrected,  // L_n(l2 e^{-tau}) exp(-l2/2 (1 + 2 nbar (1 - e^{-tau})))
  flipped,    // same with the exponent sign flipped; diverges, kept for residual checks
};

/// Symmetric characteristic function of the decohered Fock state at
/// lambda2 = |lambda|^2.
double characteristic_fn(const DecoherenceParams& params, double lambda2,
                         ChiForm form = ChiForm::corrected);

/// Occupation probabilities p_0..p_n. Same values as mixture_coefficients.
std::vector<double> populations(int n, double tau);

/// Tr rho^2 = sum_k p_k^2.
double purity(int n, double tau);

}  // namespace fockdecay

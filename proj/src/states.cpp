#include "fockdecay/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fockdecay/errors.hpp"
#include "fockdecay/kernels.hpp"
#include "fockdecay/specfn.hpp"

namespace fockdecay {

namespace {

void check_level_and_tau(int n, double tau) {
  if (n < 0) throw DomainError("Fock level must be non-negative");
  if (!std::isfinite(tau) || tau < 0.0) throw DomainError("tau must be finite and non-negative");
  if (n > kMaxLevel)
    throw RangeError("Fock level " + std::to_string(n) + " exceeds supported maximum 50");
  if (tau > kMaxTau) throw RangeError("tau exceeds supported maximum 50");
}

}  // namespace

void DecoherenceParams::validate() const {
  check_level_and_tau(n, tau);
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw DomainError("nbar must be finite and non-negative");
}

std::vector<double> mixture_coefficients(int n, double tau) {
  check_level_and_tau(n, tau);
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  if (tau == 0.0) {
    // (e^0 - 1)^0 := 1, every other power vanishes.
    c[n] = 1.0;
    return c;
  }
  const double log_growth = std::log(std::expm1(tau));  // ln(e^tau - 1), stable near 0
  for (int m = 0; m <= n; ++m) {
    const double log_c = specfn::log_binomial(n, m) - n * tau + (n - m) * log_growth;
    c[m] = std::exp(log_c);
  }
  return c;
}

std::vector<double> populations(int n, double tau) { return mixture_coefficients(n, tau); }

double purity(int n, double tau) {
  double sum = 0.0;
  for (double p : populations(n, tau)) sum += p * p;
  return sum;
}

MixtureState::MixtureState(const DecoherenceParams& params) : params_(params) {
  params_.validate();
  if (params_.nbar > 0.0)
    throw UnsupportedParameter(
        "closed-form mixture requires nbar = 0; use the Hankel-inversion path for nbar > 0");
  weights_ = mixture_coefficients(params_.n, params_.tau);
  signed_.resize(weights_.size());
  for (std::size_t m = 0; m < weights_.size(); ++m)
    signed_[m] = (m % 2 == 0) ? weights_[m] : -weights_[m];
}

double MixtureState::wigner_radial(double r2) const {
  const double series = kernels::laguerre_series_at(signed_, 2.0 * r2);
  return std::exp(-r2) * series / std::numbers::pi;
}

void MixtureState::wigner_radial(std::span<const double> r2, std::span<double> out) const {
  std::vector<double> u(r2.size());
  for (std::size_t i = 0; i < r2.size(); ++i) u[i] = 2.0 * r2[i];
  kernels::laguerre_series(signed_, u, out);
  for (std::size_t i = 0; i < r2.size(); ++i)
    out[i] = std::exp(-r2[i]) * out[i] / std::numbers::pi;
}

double wigner_static(int n, PhasePoint point) {
  check_level_and_tau(n, 0.0);
  const double r2 = point.r2();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign / std::numbers::pi * std::exp(-r2) * specfn::laguerre(n, 2.0 * r2);
}

double wigner_t(const DecoherenceParams& params, PhasePoint point) {
  return MixtureState(params).wigner(point);
}

double characteristic_fn(const DecoherenceParams& params, double lambda2, ChiForm form) {
  params.validate();
  if (!std::isfinite(lambda2) || lambda2 < 0.0)
    throw DomainError("characteristic_fn: lambda2 must be finite and non-negative");
  const double decay = std::exp(-params.tau);
  // 1 + 2 nbar (1 - e^{-tau}), written with expm1 for small tau.
  const double width = 1.0 - 2.0 * params.nbar * std::expm1(-params.tau);
  const double exponent = 0.5 * lambda2 * width;
  const double envelope = form == ChiForm::corrected ? std::exp(-exponent) : std::exp(exponent);
  return specfn::laguerre(params.n, lambda2 * decay) * envelope;
}

}  // namespace fockdecay

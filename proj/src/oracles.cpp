#include "fockdecay/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fockdecay/errors.hpp"
#include "fockdecay/quadrature.hpp"
#include "fockdecay/specfn.hpp"

namespace fockdecay::oracles {

namespace {

constexpr double kMaxStep = 0.01;
constexpr double kTopLevelLeak = 1e-8;
constexpr double kChiCutoff = 1e-14;
constexpr double kFiniteDifferenceStep = 1e-4;

void rate_equations(double nbar, const std::vector<double>& p, std::vector<double>& dp) {
  std::fill(dp.begin(), dp.end(), 0.0);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double level = static_cast<double>(k + 1);
    const double down = (nbar + 1.0) * level * p[k + 1];
    const double up = nbar * level * p[k];
    dp[k] += down - up;
    dp[k + 1] += up - down;
  }
}

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Crude upper bound on |chi| using |L_n(x)| <= sum_m C(n,m) x^m / m!.
double chi_envelope(const DecoherenceParams& params, double lambda2) {
  const double x = lambda2 * std::exp(-params.tau);
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m <= params.n; ++m) {
    term *= x * (params.n - m + 1.0) / (static_cast<double>(m) * m);
    sum += term;
  }
  const double width = 1.0 - 2.0 * params.nbar * std::expm1(-params.tau);
  return sum * std::exp(-0.5 * lambda2 * width);
}

}  // namespace

OdeResult integrate_lindblad(int n, double tau, double nbar, const OdeConfig& cfg) {
  if (n < 0) throw DomainError("integrate_lindblad: negative Fock level");
  if (!std::isfinite(tau) || tau < 0.0) throw DomainError("integrate_lindblad: bad tau");
  if (!std::isfinite(nbar) || nbar < 0.0) throw DomainError("integrate_lindblad: bad nbar");
  if (cfg.dim < n + 1)
    throw DomainError("integrate_lindblad: truncation dimension " + std::to_string(cfg.dim) +
                      " cannot hold level " + std::to_string(n));
  if (!(cfg.dt > 0.0) || cfg.dt > kMaxStep)
    throw DomainError("integrate_lindblad: step size must lie in (0, 0.01]");

  const std::size_t dim = static_cast<std::size_t>(cfg.dim);
  OdeResult result;
  std::vector<double> p(dim, 0.0);
  p[n] = 1.0;

  const int steps = tau == 0.0 ? 0 : static_cast<int>(std::ceil(tau / cfg.dt - 1e-9));
  const double h = steps > 0 ? tau / steps : 0.0;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), stage(dim);

  auto check_top = [&](const std::vector<double>& v) {
    if (nbar > 0.0 && v.back() > kTopLevelLeak)
      throw TruncationError("integrate_lindblad: top level occupancy exceeds 1e-8; raise dim");
  };

  for (int s = 0; s < steps; ++s) {
    rate_equations(nbar, p, k1);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = p[i] + 0.5 * h * k1[i];
    rate_equations(nbar, stage, k2);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = p[i] + 0.5 * h * k2[i];
    rate_equations(nbar, stage, k3);
    for (std::size_t i = 0; i < dim; ++i) stage[i] = p[i] + h * k3[i];
    rate_equations(nbar, stage, k4);
    for (std::size_t i = 0; i < dim; ++i)
      p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    result.max_norm_drift = std::max(result.max_norm_drift, std::abs(sum_of(p) - 1.0));
    check_top(p);
  }
  result.populations = std::move(p);
  result.steps = steps;
  return result;
}

std::vector<double> lindblad_populations(int n, double tau, double nbar, const OdeConfig& cfg) {
  return integrate_lindblad(n, tau, nbar, cfg).populations;
}

double hankel_wigner(const DecoherenceParams& params, double r) {
  params.validate();
  if (!std::isfinite(r) || r < 0.0) throw DomainError("hankel_wigner: r must be non-negative");

  constexpr double kEllLimit = 200.0;
  double ell_max = 2.0;
  while (chi_envelope(params, 0.5 * ell_max * ell_max) >= kChiCutoff && ell_max < kEllLimit)
    ell_max += 0.5;
  if (std::abs(characteristic_fn(params, 0.5 * ell_max * ell_max)) >= kChiCutoff)
    throw TruncationError("hankel_wigner: characteristic function not below 1e-14 at cutoff");

  auto integrand = [&params, r](double ell) {
    return ell * specfn::bessel_j0(ell * r) * characteristic_fn(params, 0.5 * ell * ell);
  };
  quad::QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  const int panels =
      std::max(8, static_cast<int>(std::ceil(ell_max * (r + 1.0) / std::numbers::pi)));
  const auto res = quad::integrate(integrand, 0.0, ell_max, opts, panels);
  if (!res.converged) throw ConvergenceError("hankel_wigner: quadrature did not converge");
  return res.value / (2.0 * std::numbers::pi);
}

double diffusion_residual(int n, double tau, double nbar, std::span<const TransformPoint> grid,
                          ChiForm form) {
  constexpr double h = kFiniteDifferenceStep;
  if (!(tau > h)) throw DomainError("diffusion_residual: tau must exceed the time step 1e-4");
  // Any fixed direction works; chi depends on xt, pt only through xt^2 + pt^2.
  const double cos_t = std::cos(0.3);
  const double sin_t = std::sin(0.3);

  auto chi = [&](double xt, double pt, double t) {
    return characteristic_fn({n, t, nbar}, 0.5 * (xt * xt + pt * pt), form);
  };

  double worst = 0.0;
  for (const TransformPoint& point : grid) {
    if (!(point.ell >= 0.0 && point.ell <= 10.0))
      throw DomainError("diffusion_residual: grid points must satisfy 0 <= ell <= 10");
    const double xt = point.ell * cos_t;
    const double pt = point.ell * sin_t;
    const double value = chi(xt, pt, tau);
    const double d_tau = (chi(xt, pt, tau + h) - chi(xt, pt, tau - h)) / (2.0 * h);
    const double d_xt = (chi(xt + h, pt, tau) - chi(xt - h, pt, tau)) / (2.0 * h);
    const double d_pt = (chi(xt, pt + h, tau) - chi(xt, pt - h, tau)) / (2.0 * h);
    const double rhs =
        0.5 * (xt * d_xt + pt * d_pt + (0.5 + nbar) * (xt * xt + pt * pt) * value);
    worst = std::max(worst, std::abs(d_tau + rhs));
  }
  return worst;
}

namespace {

std::int64_t exact_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);  // exact at every step
  return c;
}

}  // namespace

std::int64_t alternating_binomial_identity(int a, int b) {
  if (a < 0 || a > b) throw DomainError("alternating_binomial_identity: need 0 <= a <= b");
  if (b > 30) throw OverflowError("alternating_binomial_identity: b > 30 overflows 64-bit terms");
  std::int64_t sum = 0;
  for (int k = a; k <= b; ++k) {
    const std::int64_t term = exact_binomial(b, k) * exact_binomial(k, a);
    sum += ((k + a) % 2 == 0) ? term : -term;
  }
  return sum;
}

double phase_space_purity(int n, double tau) {
  const MixtureState state({n, tau, 0.0});
  auto integrand = [&state](double s) {
    const double w = state.wigner_radial(s);
    return w * w;
  };
  quad::QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  const auto res = quad::integrate(integrand, 0.0, 4.0 * n + 20.0, opts, 2 * n + 4);
  if (!res.converged) throw ConvergenceError("phase_space_purity: quadrature did not converge");
  return 2.0 * std::numbers::pi * std::numbers::pi * res.value;
}

double phase_space_norm(int n, double tau) {
  const MixtureState state({n, tau, 0.0});
  auto integrand = [&state](double s) { return state.wigner_radial(s); };
  quad::QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  const auto res = quad::integrate(integrand, 0.0, 4.0 * n + 40.0, opts, 2 * n + 4);
  if (!res.converged) throw ConvergenceError("phase_space_norm: quadrature did not converge");
  return std::numbers::pi * res.value;
}

}  // namespace fockdecay::oracles

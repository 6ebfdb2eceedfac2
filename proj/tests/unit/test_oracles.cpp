#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fockdecay/errors.hpp"
#include "fockdecay/oracles.hpp"
#include "fockdecay/states.hpp"

using namespace fockdecay;
using namespace fockdecay::oracles;
using std::numbers::pi;

TEST_CASE("lindblad vacuum is stationary") {
  const auto p = lindblad_populations(0, 3.0, 0.0, {1, 1e-3});
  REQUIRE(p.size() == 1);
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lindblad populations match the closed form") {
  const auto ode = lindblad_populations(3, 0.7, 0.0, {4, 1e-3});
  const auto exact = populations(3, 0.7);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(ode[k] - exact[k]) < 1e-8);

  for (int n = 0; n <= 15; ++n)
    for (double tau : {0.1, 0.5, 1.0, 2.0}) {
      const OdeResult r = integrate_lindblad(n, tau, 0.0, {n + 1, 1e-3});
      const auto p = populations(n, tau);
      for (int k = 0; k <= n; ++k) CHECK(std::abs(r.populations[k] - p[k]) < 1e-7);
      CHECK(r.max_norm_drift < 1e-9);
      for (double v : r.populations) {
        CHECK(v >= -1e-15);
        CHECK(v <= 1.0 + 1e-15);
      }
    }
}

TEST_CASE("lindblad thermal fixed point") {
  const double nbar = 0.5;
  for (int n : {0, 2, 5}) {
    const OdeResult r = integrate_lindblad(n, 25.0, nbar, {40, 5e-3});
    for (int k = 0; k < 10; ++k) {
      const double bose = std::pow(nbar, k) / std::pow(nbar + 1.0, k + 1);
      CHECK(std::abs(r.populations[k] - bose) < 1e-9);
    }
    CHECK(r.max_norm_drift < 1e-9);
  }
}

TEST_CASE("lindblad configuration errors") {
  CHECK_THROWS_AS(lindblad_populations(3, 1.0, 0.0, {3, 1e-3}), DomainError);
  CHECK_THROWS_AS(lindblad_populations(3, 1.0, 0.0, {4, 0.02}), DomainError);
  CHECK_THROWS_AS(lindblad_populations(3, 1.0, 0.0, {4, 0.0}), DomainError);
  CHECK_THROWS_AS(lindblad_populations(2, 5.0, 1.0, {4, 1e-3}), TruncationError);
}

TEST_CASE("hankel inversion of the vacuum fixes the 1/(2 pi) constant") {
  for (double r : {0.0, 0.5, 1.0, 2.0, 3.5})
    CHECK(std::abs(hankel_wigner({0, 0.0, 0.0}, r) - std::exp(-r * r) / pi) < 1e-12);
}

TEST_CASE("hankel inversion matches the mixture") {
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n)
    for (double tau : {0.0, 0.15, 0.3})
      for (int i = 0; i <= 120; i += 3) {
        const double r = 0.05 * i;
        const DecoherenceParams p{n, tau, 0.0};
        worst = std::max(worst, std::abs(hankel_wigner(p, r) - wigner_t(p, {r, 0.0})));
      }
  CHECK(worst < 1e-8);
}

TEST_CASE("hankel inversion at long times relaxes to a thermal Gaussian") {
  const double nbar = 1.0;
  const double width = 1.0 + 2.0 * nbar;
  for (int n : {0, 3, 6})
    for (double r : {0.0, 0.8, 2.0, 4.0}) {
      const double expect = std::exp(-r * r / width) / (pi * width);
      CHECK(std::abs(hankel_wigner({n, 40.0, nbar}, r) - expect) < 1e-8);
    }
}

TEST_CASE("finite temperature: Hankel inversion agrees with ODE populations") {
  // At nbar > 0 the state stays diagonal, so W = sum_k p_k W_k with p_k from
  // the rate equations.
  const double nbar = 0.3;
  for (int n : {1, 4}) {
    const double tau = 0.4;
    const OdeResult ode = integrate_lindblad(n, tau, nbar, {40, 1e-3});
    for (double r : {0.0, 0.7, 1.5, 3.0}) {
      double mix = 0.0;
      for (int k = 0; k < 40; ++k) mix += ode.populations[k] * wigner_static(k, {r, 0.0});
      CHECK(std::abs(hankel_wigner({n, tau, nbar}, r) - mix) < 1e-8);
    }
  }
}

TEST_CASE("diffusion residual") {
  std::vector<TransformPoint> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back({0.25 * i});
  for (int n = 0; n <= 5; ++n)
    for (double nbar : {0.0, 0.5}) CHECK(diffusion_residual(n, 0.2, nbar, grid) < 1e-5);

  const TransformPoint origin[] = {{0.0}};
  CHECK(diffusion_residual(3, 0.2, 0.5, origin) < 1e-7);

  const TransformPoint three[] = {{3.0}};
  CHECK(diffusion_residual(1, 0.2, 0.0, three, ChiForm::flipped) > 1e-2);

  CHECK_THROWS_AS(diffusion_residual(1, 0.0, 0.0, three), DomainError);
  const TransformPoint far[] = {{11.0}};
  CHECK_THROWS_AS(diffusion_residual(1, 0.2, 0.0, far), DomainError);
}

TEST_CASE("alternating binomial identity") {
  CHECK(alternating_binomial_identity(2, 2) == 1);
  CHECK(alternating_binomial_identity(1, 3) == 0);
  CHECK(alternating_binomial_identity(0, 4) == 0);
  int failures = 0;
  for (int b = 0; b <= 30; ++b)
    for (int a = 0; a <= b; ++a)
      if (alternating_binomial_identity(a, b) != (a == b ? 1 : 0)) ++failures;
  CHECK(failures == 0);
  CHECK_THROWS_AS(alternating_binomial_identity(0, 31), OverflowError);
  CHECK_THROWS_AS(alternating_binomial_identity(3, 2), DomainError);
}

TEST_CASE("phase-space purity") {
  for (double tau : {0.0, 0.3, 2.0}) CHECK(std::abs(phase_space_purity(0, tau) - 1.0) < 1e-10);
  CHECK(std::abs(phase_space_purity(1, std::log(2.0)) - 0.5) < 1e-10);
  for (int n : {1, 5, 12}) CHECK(std::abs(phase_space_purity(n, 0.0) - 1.0) < 1e-8);
  for (int n = 0; n <= 20; n += 5)
    for (double tau : {0.1, 0.9, 2.5})
      CHECK(std::abs(phase_space_purity(n, tau) - purity(n, tau)) < 1e-8);
}

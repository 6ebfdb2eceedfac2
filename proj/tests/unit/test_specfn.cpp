#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fockdecay/errors.hpp"
#include "fockdecay/quadrature.hpp"
#include "fockdecay/specfn.hpp"
#include "test_support.hpp"

using namespace fockdecay;
using fockdecay::testing::laguerre_explicit;

TEST_CASE("laguerre examples") {
  CHECK(specfn::laguerre(0, 3.7) == 1.0);
  CHECK(specfn::laguerre(1, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // 1 - 2x + x^2/2 at x = 2
  CHECK(laguerre_explicit(2, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(specfn::laguerre(2, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("laguerre recurrence agrees with the explicit sum") {
  for (int n = 0; n <= 10; ++n) {
    for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double ref = laguerre_explicit(n, x);
      const double got = specfn::laguerre(n, x);
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("laguerre matches libstdc++ for higher orders") {
  for (int n : {15, 30, 50})
    for (double x : {0.3, 7.0, 40.0, 150.0}) {
      const double ref = std::laguerre(n, x);
      CHECK(specfn::laguerre(n, x) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("laguerre domain errors") {
  CHECK_THROWS_AS(specfn::laguerre(2, -0.1), DomainError);
  CHECK_THROWS_AS(specfn::laguerre(2, NAN), DomainError);
  CHECK_THROWS_AS(specfn::laguerre(2, INFINITY), DomainError);
  CHECK_THROWS_AS(specfn::laguerre(-1, 1.0), DomainError);
}

TEST_CASE("log_binomial") {
  CHECK(specfn::log_binomial(5, 2) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(specfn::log_binomial(7, 0) == 0.0);
  const auto pascal = fockdecay::testing::pascal(30);
  CHECK(pascal[20][10] == 184756u);
  CHECK(specfn::log_binomial(20, 10) == doctest::Approx(std::log(184756.0)).epsilon(1e-14));

  for (int n = 0; n <= 25; ++n)
    for (int k = 0; k <= n; ++k) {
      const double exact = static_cast<double>(pascal[n][k]);
      CHECK(std::abs(std::exp(specfn::log_binomial(n, k)) - exact) <= 1e-12 * exact);
    }
  for (int k = 0; k <= 30; ++k) {
    const double exact = static_cast<double>(pascal[30][k]);
    CHECK(std::abs(std::exp(specfn::log_binomial(30, k)) - exact) <= 1e-12 * exact);
  }
  CHECK_THROWS_AS(specfn::log_binomial(3, 4), DomainError);
  CHECK_THROWS_AS(specfn::log_binomial(3, -1), DomainError);
}

TEST_CASE("upper incomplete gamma") {
  CHECK(specfn::upper_incomplete_gamma(0, 0.0) == 1.0);
  CHECK(specfn::upper_incomplete_gamma(0, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  // -(u+1) e^{-u} from 0.5 to infinity
  CHECK(specfn::upper_incomplete_gamma(1, 0.5) == doctest::Approx(1.5 * std::exp(-0.5)).epsilon(1e-15));

  double factorial = 1.0;
  for (int k = 0; k <= 15; ++k) {
    if (k > 0) factorial *= k;
    CHECK(specfn::upper_incomplete_gamma(k, 0.0) == factorial);
  }
  CHECK_THROWS_AS(specfn::upper_incomplete_gamma(2, -1.0), DomainError);
}

TEST_CASE("incomplete gamma derivative is -s^k e^{-s}") {
  const double h = 1e-5;
  for (int k : {0, 1, 3, 7, 12})
    for (double s : {0.1, 1.0, 5.0}) {
      const double fd = (specfn::upper_incomplete_gamma(k, s + h) -
                         specfn::upper_incomplete_gamma(k, s - h)) / (2 * h);
      const double exact = -std::pow(s, k) * std::exp(-s);
      CAPTURE(k);
      CAPTURE(s);
      // Differencing a value of size Gamma(k, s) costs about eps * Gamma / h.
      const double noise = 1e2 * 2.2e-16 * specfn::upper_incomplete_gamma(k, s) / h;
      CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact) + noise);
    }
}

TEST_CASE("incomplete gamma matches quadrature of the integrand") {
  for (int k : {2, 6, 10}) {
    const double s = 2.5;
    const auto res = quad::integrate([k](double u) { return std::pow(u, k) * std::exp(-u); }, s,
                                     s + 200.0, {1e-12, 1e-14, 2000}, 40);
    CHECK(specfn::upper_incomplete_gamma(k, s) == doctest::Approx(res.value).epsilon(1e-11));
  }
}

namespace {

long double j0_series_ld(long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 60; ++k) {
    term *= -(x * x / 4.0L) / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("bessel_j0 examples") {
  CHECK(specfn::bessel_j0(0.0) == 1.0);

  // First zero by bisection on an extended-precision power series.
  long double a = 2.0L;
  long double b = 3.0L;
  for (int i = 0; i < 100; ++i) {
    const long double mid = 0.5L * (a + b);
    if ((j0_series_ld(a) > 0) == (j0_series_ld(mid) > 0)) a = mid; else b = mid;
  }
  const double root = static_cast<double>(0.5L * (a + b));
  CHECK(root == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::abs(specfn::bessel_j0(2.404825557695773)) < 1e-9);

  // \int_0^\infty x J0(x r) e^{-x^2/4} dx = 2 e^{-r^2}
  const double r = 1.0;
  const auto res = quad::integrate(
      [r](double x) { return x * specfn::bessel_j0(x * r) * std::exp(-0.25 * x * x); }, 0.0,
      14.0, {1e-13, 0.0, 4000}, 16);
  CHECK(res.value == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-11));
}

TEST_CASE("bessel_j0 accuracy on [0, 200]") {
  double worst = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = 0.01 * i;
    worst = std::max(worst, std::abs(specfn::bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
  }
  CHECK(worst < 1e-10);
  MESSAGE("max |J0 - std::cyl_bessel_j| on [0,200] = " << worst);
  CHECK_THROWS_AS(specfn::bessel_j0(NAN), DomainError);
  CHECK_THROWS_AS(specfn::bessel_j0(-1.0), DomainError);
}

#include "fockdecay/specfn.hpp"

#include <cmath>
#include <string>

#include "fockdecay/errors.hpp"

namespace fockdecay::specfn {

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("laguerre: negative order " + std::to_string(n));
  if (!std::isfinite(x) || x < 0.0)
    throw DomainError("laguerre: argument must be finite and non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw DomainError("log_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double upper_incomplete_gamma(int k, double s) {
  if (k < 0) throw DomainError("upper_incomplete_gamma: negative order");
  if (!(s >= 0.0)) throw DomainError("upper_incomplete_gamma: s must be non-negative");
  if (std::isinf(s)) return 0.0;
  double factorial = 1.0;
  for (int j = 2; j <= k; ++j) factorial *= j;
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j <= k; ++j) {
    term *= s / j;
    sum += term;
  }
  return factorial * std::exp(-s) * sum;
}

namespace {

double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

double j0_miller(double x) {
  // Start well past the turning point k ~ x so J_N(x) is negligible.
  int start = static_cast<int>(x + 40.0 + 12.0 * std::cbrt(x));
  if (start % 2 != 0) ++start;
  constexpr double kBig = 1e200;
  double above = 0.0;   // J_{k+1}
  double cur = 1e-30;   // J_k, unnormalised
  double norm = 0.0;    // 2 * sum_{even k >= 2} J_k
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    if (k % 2 == 0) norm += 2.0 * cur;
    const double below = k * two_over_x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      above /= kBig;
      norm /= kBig;
    }
  }
  norm += cur;
  return cur / norm;
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw DomainError("bessel_j0: argument must be finite and non-negative");
  if (x == 0.0) return 1.0;
  if (x < 1.0) return j0_series(x);
  return j0_miller(x);
}

}  // namespace fockdecay::specfn

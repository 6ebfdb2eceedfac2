#include "fockdecay/kernels.hpp"

namespace fockdecay::kernels {

double laguerre_series_at(std::span<const double> weights, double u) {
  const std::size_t terms = weights.size();
  if (terms == 0) return 0.0;
  double acc = weights[0];
  if (terms == 1) return acc;
  double prev = 1.0;
  double cur = 1.0 - u;
  acc = acc + weights[1] * cur;
  for (std::size_t k = 1; k + 1 < terms; ++k) {
    const double kd = static_cast<double>(k);
    const double next = ((2.0 * kd + 1.0 - u) * cur - kd * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
    acc = acc + weights[k + 1] * cur;
  }
  return acc;
}

namespace detail {

void laguerre_series_scalar(std::span<const double> weights, std::span<const double> u,
                            std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = laguerre_series_at(weights, u[i]);
}

}  // namespace detail
}  // namespace fockdecay::kernels

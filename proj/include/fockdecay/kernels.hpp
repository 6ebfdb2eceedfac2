#pragma once

// Batch evaluation of Laguerre series S(u) = sum_m b_m L_m(u) at many points.
//
// Every backend runs the same upward recurrence
//   L_{k+1} = ((2k+1-u) L_k - k L_{k-1}) / (k+1)
// with the same operation order and no fused multiply-add, so all backends
// return bit-identical results. The scalar kernel is the reference.

#include <span>
#include <string_view>

namespace fockdecay::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);

/// True when the backend was compiled in and the running CPU supports it.
bool backend_available(Backend backend);

/// Widest available backend, unless FOCKDECAY_KERNEL=scalar is set.
Backend default_backend();

/// out[i] = sum_m weights[m] * L_m(u[i]). Requires out.size() == u.size().
void laguerre_series(std::span<const double> weights, std::span<const double> u,
                     std::span<double> out);
void laguerre_series(Backend backend, std::span<const double> weights,
                     std::span<const double> u, std::span<double> out);

/// Single-point form of the scalar kernel; shared by every scalar caller.
double laguerre_series_at(std::span<const double> weights, double u);

namespace detail {
void laguerre_series_scalar(std::span<const double> weights, std::span<const double> u,
                            std::span<double> out);
void laguerre_series_avx2(std::span<const double> weights, std::span<const double> u,
                          std::span<double> out);
}  // namespace detail

}  // namespace fockdecay::kernels

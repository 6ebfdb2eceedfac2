#include <cstdlib>
#include <string>

#include "fockdecay/errors.hpp"
#include "fockdecay/kernels.hpp"

namespace fockdecay::kernels {

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend default_backend() {
  static const Backend chosen = [] {
    if (const char* env = std::getenv("FOCKDECAY_KERNEL"); env && std::string(env) == "scalar")
      return Backend::scalar;
    return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
  }();
  return chosen;
}

void laguerre_series(Backend backend, std::span<const double> weights,
                     std::span<const double> u, std::span<double> out) {
  if (out.size() != u.size()) throw DomainError("laguerre_series: output size mismatch");
  if (!backend_available(backend)) backend = Backend::scalar;
  switch (backend) {
    case Backend::avx2:
      detail::laguerre_series_avx2(weights, u, out);
      return;
    case Backend::scalar:
      detail::laguerre_series_scalar(weights, u, out);
      return;
  }
}

void laguerre_series(std::span<const double> weights, std::span<const double> u,
                     std::span<double> out) {
  laguerre_series(default_backend(), weights, u, out);
}

}  // namespace fockdecay::kernels

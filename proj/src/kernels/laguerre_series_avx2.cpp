#include "fockdecay/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define FOCKDECAY_HAVE_AVX2_KERNEL 1
#endif

namespace fockdecay::kernels::detail {

#ifdef FOCKDECAY_HAVE_AVX2_KERNEL

// Four points per lane group. Operation order mirrors laguerre_series_at
// exactly: (2k+1) - u, times L_k, minus k*L_{k-1}, divided by k+1.
__attribute__((target("avx2"))) void laguerre_series_avx2(std::span<const double> weights,
                                                          std::span<const double> u,
                                                          std::span<double> out) {
  const std::size_t terms = weights.size();
  const std::size_t count = u.size();
  std::size_t i = 0;
  if (terms >= 2) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d w0 = _mm256_set1_pd(weights[0]);
    const __m256d w1 = _mm256_set1_pd(weights[1]);
    for (; i + 4 <= count; i += 4) {
      const __m256d x = _mm256_loadu_pd(u.data() + i);
      __m256d prev = one;
      __m256d cur = _mm256_sub_pd(one, x);
      __m256d acc = _mm256_add_pd(w0, _mm256_mul_pd(w1, cur));
      for (std::size_t k = 1; k + 1 < terms; ++k) {
        const double kd = static_cast<double>(k);
        const __m256d a = _mm256_set1_pd(2.0 * kd + 1.0);
        const __m256d kv = _mm256_set1_pd(kd);
        const __m256d denom = _mm256_set1_pd(kd + 1.0);
        const __m256d lhs = _mm256_mul_pd(_mm256_sub_pd(a, x), cur);
        const __m256d next = _mm256_div_pd(_mm256_sub_pd(lhs, _mm256_mul_pd(kv, prev)), denom);
        prev = cur;
        cur = next;
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[k + 1]), cur));
      }
      _mm256_storeu_pd(out.data() + i, acc);
    }
  }
  for (; i < count; ++i) out[i] = laguerre_series_at(weights, u[i]);
}

#else

void laguerre_series_avx2(std::span<const double> weights, std::span<const double> u,
                          std::span<double> out) {
  laguerre_series_scalar(weights, u, out);
}

#endif

}  // namespace fockdecay::kernels::detail

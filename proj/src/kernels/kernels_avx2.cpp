// SPDX-License-Identifier: Apache-2.0
// Compiled with -mavx2 only; reached through the dispatch table after a
// runtime CPU check.
#include <immintrin.h>

#include "netmeasure/kernels.hpp"

namespace netmeasure::kernels {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Separate multiply and subtract (no FMA) so results match the scalar
// reference bit for bit.
void axpy_neg_avx2(double* dst, const double* src, double factor, std::size_t n) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(f, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(dst + i, _mm256_sub_pd(_mm256_loadu_pd(dst + i), prod));
  }
  for (; i < n; ++i) dst[i] -= factor * src[i];
}

WindowSum window_sum_avx2(KernelShape shape, double k0, double radius, const double* y,
                          const double* w, std::size_t n, double s) {
  const double slope = radius > 0.0 ? k0 / radius : 0.0;
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d vr = _mm256_set1_pd(radius);
  const __m256d vk0 = _mm256_set1_pd(k0);
  const __m256d vslope = _mm256_set1_pd(slope);
  const __m256d zero = _mm256_setzero_pd();
  const bool linear = shape == KernelShape::kLinear;

  __m256d acc_v = zero, acc_w = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(y + i), vs);
    const __m256d inside =
        _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_GE_OQ), _mm256_cmp_pd(d, vr, _CMP_LE_OQ));
    const __m256d wi = _mm256_and_pd(_mm256_loadu_pd(w + i), inside);
    const __m256d k = linear ? _mm256_sub_pd(vk0, _mm256_mul_pd(d, vslope)) : vk0;
    acc_v = _mm256_add_pd(acc_v, _mm256_mul_pd(wi, k));
    acc_w = _mm256_add_pd(acc_w, wi);
  }
  WindowSum out{hsum(acc_v), hsum(acc_w)};
  for (; i < n; ++i) {
    const double d = y[i] - s;
    if (d < 0.0 || d > radius) continue;
    const double k = linear ? k0 - d * slope : k0;
    out.value += w[i] * k;
    out.weight += w[i];
  }
  return out;
}

double power_sum_avx2(const double* d, const double* m, std::size_t n, int p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d di = _mm256_loadu_pd(d + i);
    if (p == 2) di = _mm256_mul_pd(di, di);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(m + i), di));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += p == 1 ? m[i] * d[i] : m[i] * (d[i] * d[i]);
  return total;
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{"avx2", axpy_neg_avx2, window_sum_avx2, power_sum_avx2};
  return table;
}

}  // namespace netmeasure::kernels

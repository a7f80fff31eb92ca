// AVX2/FMA variants of the reduction kernels. Functions carry the target
// attribute so this file builds without special flags; the dispatcher only
// installs them after a cpuid check.

#include "kernels_backend.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace simout::kernels::detail {

namespace {

#define SIMOUT_AVX2 __attribute__((target("avx2,fma")))

SIMOUT_AVX2 double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

SIMOUT_AVX2 double sum_avx2(const double* xs, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(xs + i));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += xs[i];
  return s;
}

SIMOUT_AVX2 double sum_sq_dev_avx2(const double* xs, std::size_t n,
                                   double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + i), c);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = xs[i] - center;
    s += d * d;
  }
  return s;
}

SIMOUT_AVX2 MinMax minmax_avx2(const double* xs, std::size_t n) {
  MinMax r{xs[0], xs[0], 0, 0};
  if (n >= 8) {
    __m256d vmin = _mm256_loadu_pd(xs);
    __m256d vmax = vmin;
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(xs + i);
      vmin = _mm256_min_pd(vmin, v);
      vmax = _mm256_max_pd(vmax, v);
    }
    alignas(32) double mins[4], maxs[4];
    _mm256_store_pd(mins, vmin);
    _mm256_store_pd(maxs, vmax);
    r.min = mins[0];
    r.max = maxs[0];
    for (int k = 1; k < 4; ++k) {
      if (mins[k] < r.min) r.min = mins[k];
      if (maxs[k] > r.max) r.max = maxs[k];
    }
    for (; i < n; ++i) {
      if (xs[i] < r.min) r.min = xs[i];
      if (xs[i] > r.max) r.max = xs[i];
    }
    // Second pass recovers the first index attaining each extremum.
    bool found_min = false, found_max = false;
    for (i = 0; i < n; ++i) {
      if (!found_min && xs[i] == r.min) {
        r.imin = i;
        found_min = true;
        if (found_max) break;
      }
      if (!found_max && xs[i] == r.max) {
        r.imax = i;
        found_max = true;
        if (found_min) break;
      }
    }
    return r;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (xs[i] < r.min) {
      r.min = xs[i];
      r.imin = i;
    }
    if (xs[i] > r.max) {
      r.max = xs[i];
      r.imax = i;
    }
  }
  return r;
}

SIMOUT_AVX2 void envelope_avx2(const double* xs, double* lo, double* hi,
                               std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(xs + i);
    _mm256_storeu_pd(lo + i, _mm256_min_pd(_mm256_loadu_pd(lo + i), v));
    _mm256_storeu_pd(hi + i, _mm256_max_pd(_mm256_loadu_pd(hi + i), v));
  }
  for (; i < n; ++i) {
    if (xs[i] < lo[i]) lo[i] = xs[i];
    if (xs[i] > hi[i]) hi[i] = xs[i];
  }
}

#undef SIMOUT_AVX2

}  // namespace

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

Backend avx2_backend() {
  return Backend{"avx2", sum_avx2, sum_sq_dev_avx2, minmax_avx2,
                 envelope_avx2};
}

}  // namespace simout::kernels::detail

#endif  // x86_64

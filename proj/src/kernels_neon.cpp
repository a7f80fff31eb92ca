// NEON variants for aarch64. Kept to baseline A64 intrinsics; equivalence
// against the scalar path is covered by the same tests that check AVX2.

#include "kernels_backend.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

namespace simout::kernels::detail {

namespace {

double sum_neon(const double* xs, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vld1q_f64(xs + i));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += xs[i];
  return s;
}

double sum_sq_dev_neon(const double* xs, std::size_t n, double center) {
  const float64x2_t c = vdupq_n_f64(center);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(xs + i), c);
    acc = vfmaq_f64(acc, d, d);
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = xs[i] - center;
    s += d * d;
  }
  return s;
}

MinMax minmax_neon(const double* xs, std::size_t n) {
  MinMax r{xs[0], xs[0], 0, 0};
  if (n >= 4) {
    float64x2_t vmin = vld1q_f64(xs);
    float64x2_t vmax = vmin;
    std::size_t i = 2;
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(xs + i);
      vmin = vminq_f64(vmin, v);
      vmax = vmaxq_f64(vmax, v);
    }
    r.min = vgetq_lane_f64(vmin, 0);
    if (vgetq_lane_f64(vmin, 1) < r.min) r.min = vgetq_lane_f64(vmin, 1);
    r.max = vgetq_lane_f64(vmax, 0);
    if (vgetq_lane_f64(vmax, 1) > r.max) r.max = vgetq_lane_f64(vmax, 1);
    for (; i < n; ++i) {
      if (xs[i] < r.min) r.min = xs[i];
      if (xs[i] > r.max) r.max = xs[i];
    }
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

void envelope_neon(const double* xs, double* lo, double* hi, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(xs + i);
    vst1q_f64(lo + i, vminq_f64(vld1q_f64(lo + i), v));
    vst1q_f64(hi + i, vmaxq_f64(vld1q_f64(hi + i), v));
  }
  for (; i < n; ++i) {
    if (xs[i] < lo[i]) lo[i] = xs[i];
    if (xs[i] > hi[i]) hi[i] = xs[i];
  }
}

}  // namespace

Backend neon_backend() {
  return Backend{"neon", sum_neon, sum_sq_dev_neon, minmax_neon,
                 envelope_neon};
}

}  // namespace simout::kernels::detail

#endif  // aarch64 / NEON

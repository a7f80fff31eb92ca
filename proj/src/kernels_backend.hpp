#ifndef SIMOUT_KERNELS_BACKEND_HPP_
#define SIMOUT_KERNELS_BACKEND_HPP_

#include <cstddef>

#include "simout/kernels.hpp"

namespace simout::kernels::detail {

// Raw-pointer function table filled in by one backend translation unit.
struct Backend {
  const char* name;
  double (*sum)(const double*, std::size_t);
  double (*sum_sq_dev)(const double*, std::size_t, double);
  MinMax (*minmax)(const double*, std::size_t);
  void (*envelope)(const double*, double*, double*, std::size_t);
};

Backend scalar_backend();

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported();
Backend avx2_backend();
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
Backend neon_backend();
#endif

}  // namespace simout::kernels::detail

#endif  // SIMOUT_KERNELS_BACKEND_HPP_

#ifndef SIMOUT_KERNELS_HPP_
#define SIMOUT_KERNELS_HPP_

#include <cstddef>
#include <span>

// Data-parallel primitives behind the statistics layer. Every operation has
// a scalar reference implementation (kernels::ref) and, where the target CPU
// supports it, a SIMD variant. The top-level functions dispatch once, at
// first use, to the widest available backend; tests assert equivalence of
// the two paths on random inputs.
namespace simout::kernels {

struct MinMax {
  double min;
  double max;
  std::size_t imin;  // first index attaining min
  std::size_t imax;  // first index attaining max
};

// Scalar reference path. Left-to-right accumulation order, no FMA.
namespace ref {
double sum(std::span<const double> xs);
double sum_sq_dev(std::span<const double> xs, double center);
MinMax minmax(std::span<const double> xs);
void envelope(std::span<const double> xs, std::span<double> lo,
              std::span<double> hi);
}  // namespace ref

// Dispatched path. Results may differ from ref:: by reduction reordering
// (last-ulp differences in sums); minmax and envelope are exact.
double sum(std::span<const double> xs);
double sum_sq_dev(std::span<const double> xs, double center);
MinMax minmax(std::span<const double> xs);

// Elementwise running envelope: lo[i] = min(lo[i], xs[i]) and
// hi[i] = max(hi[i], xs[i]). All three spans must have equal length.
void envelope(std::span<const double> xs, std::span<double> lo,
              std::span<double> hi);

double mean(std::span<const double> xs);

// Name of the backend the dispatcher selected ("scalar", "avx2", "neon").
// The SIMOUT_KERNELS environment variable, when set to one of those names,
// pins the choice at startup.
const char* active_backend();

// Force a backend by name; throws Error(DomainError) if it is unknown or
// unsupported on this CPU. Intended for tests.
void force_backend(const char* name);

}  // namespace simout::kernels

#endif  // SIMOUT_KERNELS_HPP_

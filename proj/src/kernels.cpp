#include "simout/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "simout/error.hpp"
#include "kernels_backend.hpp"

namespace simout::kernels {

namespace ref {

double sum(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc;
}

double sum_sq_dev(std::span<const double> xs, double center) {
  double acc = 0.0;
  for (double x : xs) {
    const double d = x - center;
    acc += d * d;
  }
  return acc;
}

MinMax minmax(std::span<const double> xs) {
  MinMax r{xs[0], xs[0], 0, 0};
  for (std::size_t i = 1; i < xs.size(); ++i) {
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

void envelope(std::span<const double> xs, std::span<double> lo,
              std::span<double> hi) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < lo[i]) lo[i] = xs[i];
    if (xs[i] > hi[i]) hi[i] = xs[i];
  }
}

}  // namespace ref

namespace detail {

Backend scalar_backend() {
  Backend b;
  b.name = "scalar";
  b.sum = [](const double* xs, std::size_t n) {
    return ref::sum({xs, n});
  };
  b.sum_sq_dev = [](const double* xs, std::size_t n, double c) {
    return ref::sum_sq_dev({xs, n}, c);
  };
  b.minmax = [](const double* xs, std::size_t n) {
    return ref::minmax({xs, n});
  };
  b.envelope = [](const double* xs, double* lo, double* hi, std::size_t n) {
    ref::envelope({xs, n}, {lo, n}, {hi, n});
  };
  return b;
}

namespace {

Backend pick_backend(const char* requested) {
#if defined(__x86_64__) || defined(_M_X64)
  const bool have_avx2 = avx2_supported();
#else
  const bool have_avx2 = false;
#endif
  if (requested != nullptr) {
    const std::string want = requested;
    if (want == "scalar") return scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2" && have_avx2) return avx2_backend();
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
    if (want == "neon") return neon_backend();
#endif
    throw Error(ErrorKind::DomainError,
                "unknown or unsupported kernels backend '" + want + "'");
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (have_avx2) return avx2_backend();
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
  if (have_neon) return neon_backend();
#endif
  return scalar_backend();
}

Backend& current() {
  static Backend backend = pick_backend(std::getenv("SIMOUT_KERNELS"));
  return backend;
}

}  // namespace
}  // namespace detail

double sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return detail::current().sum(xs.data(), xs.size());
}

double sum_sq_dev(std::span<const double> xs, double center) {
  if (xs.empty()) return 0.0;
  return detail::current().sum_sq_dev(xs.data(), xs.size(), center);
}

MinMax minmax(std::span<const double> xs) {
  if (xs.empty()) {
    throw Error(ErrorKind::DomainError, "minmax of an empty range");
  }
  return detail::current().minmax(xs.data(), xs.size());
}

void envelope(std::span<const double> xs, std::span<double> lo,
              std::span<double> hi) {
  detail::current().envelope(xs.data(), lo.data(), hi.data(), xs.size());
}

double mean(std::span<const double> xs) {
  return sum(xs) / static_cast<double>(xs.size());
}

const char* active_backend() { return detail::current().name; }

void force_backend(const char* name) {
  detail::current() = detail::pick_backend(name);
}

}  // namespace simout::kernels

#include "simout/dct.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include "simout/error.hpp"

namespace simout::dct {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT, in place. sign = -1 forward, +1 inverse (inverse
// includes the 1/n factor).
void fft(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (sign > 0) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

}  // namespace

std::vector<double> forward(std::span<const double> x) {
  const std::size_t n = x.size();
  if (!is_pow2(n)) {
    throw Error(ErrorKind::DomainError, "dct requires power-of-two length");
  }
  if (n == 1) return {x[0]};
  // Even indices first, odd indices reversed, then a length-n complex FFT
  // recovers the half-sample-shifted cosine sums.
  std::vector<std::complex<double>> v(n);
  for (std::size_t j = 0; 2 * j < n; ++j) v[j] = x[2 * j];
  for (std::size_t j = 0; 2 * j + 1 < n; ++j) v[n - 1 - j] = x[2 * j + 1];
  fft(v, -1);
  std::vector<double> out(n);
  out[0] = v[0].real();
  for (std::size_t k = 1; k < n; ++k) {
    const double ang = -kPi * static_cast<double>(k) /
                       (2.0 * static_cast<double>(n));
    const std::complex<double> w(std::cos(ang), std::sin(ang));
    out[k] = 2.0 * (w * v[k]).real();
  }
  return out;
}

std::vector<double> inverse(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  if (!is_pow2(n)) {
    throw Error(ErrorKind::DomainError, "idct requires power-of-two length");
  }
  if (n == 1) return {coeffs[0]};
  std::vector<std::complex<double>> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = kPi * static_cast<double>(k) /
                       (2.0 * static_cast<double>(n));
    v[k] = coeffs[k] * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  fft(v, +1);
  std::vector<double> out(n);
  for (std::size_t j = 0; 2 * j < n; ++j) out[2 * j] = v[j].real();
  for (std::size_t j = 0; 2 * j + 1 < n; ++j) {
    out[2 * j + 1] = v[n - 1 - j].real();
  }
  return out;
}

}  // namespace simout::dct

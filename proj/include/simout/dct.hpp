#ifndef SIMOUT_DCT_HPP_
#define SIMOUT_DCT_HPP_

#include <span>
#include <vector>

// Power-of-two cosine transforms used by the density estimator. Exposed so
// tests can check the FFT path against a direct evaluation.
namespace simout::dct {

// Type-II DCT with the scaling the density estimator expects:
//   out[0] = sum_j x[j]
//   out[k] = 2 * sum_j x[j] * cos(pi*k*(2j+1)/(2n)),  k >= 1.
// n must be a power of two.
std::vector<double> forward(std::span<const double> x);

// Exact inverse of forward(): inverse(forward(x)) == x up to rounding.
std::vector<double> inverse(std::span<const double> coeffs);

}  // namespace simout::dct

#endif  // SIMOUT_DCT_HPP_

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "simout/dct.hpp"
#include "simout/error.hpp"

using namespace simout;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Direct O(n^2) evaluation of the same transform, as the oracle.
std::vector<double> naive_dct(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) out[0] += x[j];
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += x[j] * std::cos(kPi * static_cast<double>(k) *
                             (2.0 * static_cast<double>(j) + 1.0) /
                             (2.0 * static_cast<double>(n)));
    }
    out[k] = 2.0 * acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft-based dct matches the direct evaluation") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-5, 5);
  for (std::size_t n : {2u, 4u, 8u, 16u, 64u, 256u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    const auto fast = dct::forward(x);
    const auto slow = naive_dct(x);
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::fabs(v));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::fabs(fast[k] - slow[k]) <
            1e-11 * scale * static_cast<double>(n));
    }
  }
}

TEST_CASE("inverse(forward(x)) == x") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> dist(-100, 100);
  for (std::size_t n : {2u, 8u, 32u, 1024u, 4096u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    const auto back = dct::inverse(dct::forward(x));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(back[i] - x[i]) < 1e-9);
    }
  }
}

TEST_CASE("constant input concentrates in the DC coefficient") {
  const std::vector<double> x(16, 3.0);
  const auto a = dct::forward(x);
  CHECK(a[0] == doctest::Approx(48.0).epsilon(1e-12));
  for (std::size_t k = 1; k < a.size(); ++k) {
    CHECK(std::fabs(a[k]) < 1e-12);
  }
}

TEST_CASE("non-power-of-two lengths are rejected") {
  CHECK_THROWS_AS(dct::forward(std::vector<double>(5, 1.0)), Error);
  CHECK_THROWS_AS(dct::inverse(std::vector<double>(12, 1.0)), Error);
  CHECK_THROWS_AS(dct::forward(std::vector<double>{}), Error);
}

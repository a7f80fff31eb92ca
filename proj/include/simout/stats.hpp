#ifndef SIMOUT_STATS_HPP_
#define SIMOUT_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simout/focal.hpp"

namespace simout {

// A statistic that may be undefined for a given sample (constant sample,
// too few observations). Undefined values carry the reason; they are never
// silently 0 or NaN.
struct MaybeStat {
  std::optional<double> value;
  std::string reason;

  static MaybeStat of(double v) { return {v, {}}; }
  static MaybeStat undefined(std::string why) {
    return {std::nullopt, std::move(why)};
  }
  bool defined() const { return value.has_value(); }
  double operator*() const { return *value; }
};

// Per-focal-measure descriptive statistics.
struct SummaryStats {
  std::string fm_name;     // display name, set by stats_analyze
  std::size_t n = 0;
  double alpha = 0.05;
  double mean = 0.0;
  MaybeStat variance;      // sample variance, n-1 denominator
  MaybeStat ci_lo, ci_hi;  // t-based CI at level 1-alpha
  MaybeStat sw_w, sw_p;    // Shapiro-Wilk statistic and p-value
  MaybeStat skewness;      // biased moment coefficient g1
};

std::vector<SummaryStats> stats_analyze(const FMMatrix& fm,
                                        double alpha = 0.05);
SummaryStats analyze_sample(std::span<const double> sample, double alpha);

std::string summary_stats_to_json(const std::vector<SummaryStats>& stats,
                                  const std::string& tag);

// mean +- t_{1-alpha/2, n-1} * s / sqrt(n). Requires n >= 2.
std::pair<double, double> confidence_interval(std::span<const double> sample,
                                              double alpha);

// Biased moment coefficient g1 = m3 / m2^(3/2), population moments.
// Requires n >= 2 and a non-constant sample.
double skewness(std::span<const double> sample);

struct SwResult {
  double w;
  double p;
};

// Shapiro-Wilk normality test per Royston's AS R94 approximation
// (exact p for n == 3). Requires 3 <= n <= 5000 and a non-constant sample.
SwResult shapiro_wilk(std::span<const double> sample);

// Centered moving average of nominal width 2w+1 with window truncation at
// both edges; w == 0 returns the series unchanged.
std::vector<double> moving_average(std::span<const double> series,
                                   std::size_t w);

struct Histogram {
  std::vector<double> edges;        // nbins + 1
  std::vector<std::size_t> counts;  // nbins, sums to n
};

// Equal-width bins over [min, max]; all bins half-open except the last.
// A constant sample is binned over the synthetic range [c-0.5, c+0.5].
Histogram histogram(std::span<const double> sample, std::size_t nbins = 10);

// Normal QQ points: (normal_quantile((i-0.5)/n), sorted_sample[i-1]) for
// ranks i = 1..n. Requires n >= 2.
std::vector<std::pair<double, double>> qq_points(
    std::span<const double> sample);

struct Ecdf {
  std::vector<double> x;  // sorted unique values
  std::vector<double> f;  // cumulative fractions, ends at 1
};

Ecdf ecdf(std::span<const double> sample);

// Gaussian kernel density estimate on a regular grid.
struct DensityEstimate {
  std::vector<double> grid;     // strictly increasing, length = grid_size
  std::vector<double> density;  // nonnegative, trapezoid integral ~ 1
  double bandwidth = 0.0;
};

// Grid spans [min - 3*sd, max + 3*sd]. The bandwidth comes from the
// diffusion fixed-point selector (DCT of binned data, t = xi*gamma^[7](t)
// solved by bracketed root-finding) with Silverman's 1.06*sd*n^(-1/5) as
// the fallback when no bracket exists. grid_size must be a power of two.
// Requires n >= 4 and a non-constant sample.
DensityEstimate kde(std::span<const double> sample,
                    std::size_t grid_size = 4096);

// Linear-interpolation sample quantile (the common "type 7" definition).
double sample_quantile(std::span<const double> sample, double p);

}  // namespace simout

#endif  // SIMOUT_STATS_HPP_

#ifndef SIMOUT_COMPARE_HPP_
#define SIMOUT_COMPARE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "simout/focal.hpp"

namespace simout {

enum class TestKind { Parametric, NonParametric };
enum class TVariant { PooledT, WelchT };

// Which test applies to each focal measure. A single-element per_fm_tests
// broadcasts to every FM.
struct TestSpec {
  std::vector<TestKind> per_fm_tests = {TestKind::Parametric};
  TVariant variant = TVariant::PooledT;
  double alpha = 0.05;

  TestKind test_for(std::size_t fm_index, std::size_t m) const;
};

struct CompareResult {
  std::vector<std::string> fm_names;   // display names
  std::vector<double> p_values;       // length m, in [0,1]
  std::vector<std::string> tests_used;
  std::vector<bool> failed;           // p < alpha
  std::size_t n_failed = 0;
  double alpha = 0.05;
};

struct PairwiseTable {
  std::vector<std::string> labels;              // k implementation tags
  std::vector<std::vector<std::size_t>> fail_counts;  // k x k, symmetric
};

// Two-sided two-sample t test. PooledT assumes equal variances
// (nu = na+nb-2); WelchT uses the Welch-Satterthwaite degrees of freedom.
// Two constant, equal samples give p = 1 (perfect alignment).
double t_test2(std::span<const double> a, std::span<const double> b,
               TVariant variant = TVariant::PooledT);

// Two-sided Mann-Whitney rank-sum p. Exact by enumeration of rank splits
// when na+nb <= 12 and there are no ties; otherwise the normal
// approximation with tie correction and 0.5 continuity correction.
double mann_whitney(std::span<const double> a, std::span<const double> b);

// One-way ANOVA: p = 1 - f_cdf(F, k-1, N-k).
double anova1(const std::vector<std::vector<double>>& groups);

// Kruskal-Wallis with tie correction: p = 1 - chi2_cdf(H, k-1).
double kruskal_wallis(const std::vector<std::vector<double>>& groups);

// Per-FM comparison of k >= 2 implementations. k == 2 uses the two-sample
// tests, k > 2 the k-sample ones. An FM whose values are identical across
// all implementations counts as aligned (p = 1).
CompareResult stats_compare(const std::vector<FMMatrix>& fms,
                            const TestSpec& spec);

// Pairwise failed-test counts over all implementation pairs.
PairwiseTable stats_compare_pw(const std::vector<FMMatrix>& fms,
                               const TestSpec& spec);

std::string compare_result_to_json(const CompareResult& r,
                                   const std::vector<std::string>& tags);
std::string pairwise_table_to_json(const PairwiseTable& t);
std::string pairwise_table_to_text(const PairwiseTable& t);

// Midranks of the pooled vector (average rank for ties), 1-based ranks.
std::vector<double> midranks(std::span<const double> pooled);

}  // namespace simout

#endif  // SIMOUT_COMPARE_HPP_

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "simout/error.hpp"
#include "simout/numerics.hpp"
#include "simout/stats.hpp"

using namespace simout;

namespace {

struct GoldenSample {
  std::string name;
  double w_ref, p_ref;
  std::vector<double> values;
};

std::vector<GoldenSample> load_golden() {
  std::ifstream in(SIMOUT_TEST_DATA_DIR "/shapiro_golden.tsv");
  REQUIRE(in.good());
  std::vector<GoldenSample> out;
  std::string line;
  std::getline(in, line);  // header comment
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    GoldenSample g;
    int n;
    ss >> g.name >> n >> g.w_ref >> g.p_ref;
    g.values.resize(n);
    for (auto& v : g.values) ss >> v;
    out.push_back(std::move(g));
  }
  return out;
}

// One-sample Kolmogorov-Smirnov distance against U(0,1).
double ks_uniform(std::vector<double> ps) {
  std::sort(ps.begin(), ps.end());
  const double n = static_cast<double>(ps.size());
  double d = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - ps[i];
    const double lo = ps[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

}  // namespace

TEST_CASE("golden-file agreement with the reference implementation") {
  const auto golden = load_golden();
  REQUIRE(golden.size() == 20);
  for (const auto& g : golden) {
    const SwResult r = shapiro_wilk(g.values);
    INFO("sample ", g.name);
    CHECK(std::fabs(r.w - g.w_ref) < 1e-6);
    CHECK(std::fabs(r.p - g.p_ref) < 1e-3);
    CHECK(r.p >= 0.0);
    CHECK(r.p <= 1.0);
    CHECK(r.w > 0.0);
    CHECK(r.w <= 1.0);
  }
}

TEST_CASE("near-perfect normal scores give W > 0.99") {
  const int n = 50;
  std::vector<double> scores(n);
  for (int i = 1; i <= n; ++i) {
    scores[i - 1] = numerics::normal_quantile((i - 0.375) / (n + 0.25));
  }
  const SwResult r = shapiro_wilk(scores);
  CHECK(r.w > 0.99);
  CHECK(r.p > 0.9);
}

TEST_CASE("n=3 exact case: a perfectly linear sample has W=1, p=1") {
  const SwResult r = shapiro_wilk(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(r.w == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("affine invariance of the p-value") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> dist(0, 1);
  std::vector<double> xs(40);
  for (auto& x : xs) x = dist(rng);
  const SwResult base = shapiro_wilk(xs);
  for (double a : {2.5, -3.0, 1e-4, 1e5}) {
    for (double b : {0.0, 12.75, -400.0}) {
      std::vector<double> ys = xs;
      for (auto& y : ys) y = a * y + b;
      const SwResult r = shapiro_wilk(ys);
      CHECK(std::fabs(r.p - base.p) < 1e-10);
      CHECK(std::fabs(r.w - base.w) < 1e-10);
    }
  }
}

TEST_CASE("null calibration: p-values on normal samples are uniform") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> dist(3.0, 2.0);
  std::vector<double> ps;
  const int sizes[] = {10, 20, 50};
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> xs(sizes[rep % 3]);
    for (auto& x : xs) x = dist(rng);
    ps.push_back(shapiro_wilk(xs).p);
  }
  // KS test against U(0,1) at the 1% level: critical D ~ 1.628/sqrt(n).
  const double d = ks_uniform(ps);
  CHECK(d < 1.628 / std::sqrt(200.0));
}

TEST_CASE("clearly non-normal data is rejected") {
  std::mt19937_64 rng(55);
  std::exponential_distribution<double> dist(1.0);
  std::vector<double> xs(100);
  for (auto& x : xs) x = dist(rng);
  CHECK(shapiro_wilk(xs).p < 0.001);

  // heavy bimodal
  std::vector<double> bi(60);
  for (std::size_t i = 0; i < bi.size(); ++i) {
    bi[i] = (i % 2 == 0 ? -5.0 : 5.0) + 0.1 * dist(rng);
  }
  CHECK(shapiro_wilk(bi).p < 0.001);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 1, 1, 1}), Error);
  try {
    shapiro_wilk(std::vector<double>(5001, 0.0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SampleSizeOutOfRange);
  }
  try {
    shapiro_wilk(std::vector<double>{2, 2, 2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateSample);
  }
}

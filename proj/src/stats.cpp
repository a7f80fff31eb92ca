#include "simout/stats.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "simout/error.hpp"
#include "simout/kernels.hpp"
#include "simout/numerics.hpp"

namespace simout {

using ordered_json = nlohmann::ordered_json;

namespace {

bool is_constant(std::span<const double> xs) {
  for (double x : xs) {
    if (x != xs[0]) return false;
  }
  return true;
}

ordered_json maybe_to_json(const MaybeStat& s) {
  if (s.defined()) return *s;
  return ordered_json{{"undefined", s.reason}};
}

}  // namespace

std::pair<double, double> confidence_interval(std::span<const double> sample,
                                              double alpha) {
  const std::size_t n = sample.size();
  if (n < 2) {
    throw Error(ErrorKind::TooFewObservations,
                "confidence interval needs n >= 2, got " + std::to_string(n));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::DomainError, "alpha must be in (0,1)");
  }
  const double m = kernels::mean(sample);
  const double var =
      kernels::sum_sq_dev(sample, m) / static_cast<double>(n - 1);
  const double tq = numerics::student_t_quantile(1.0 - alpha / 2.0,
                                                 static_cast<double>(n - 1));
  const double half = tq * std::sqrt(var / static_cast<double>(n));
  return {m - half, m + half};
}

double skewness(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 2 || is_constant(sample)) {
    throw Error(ErrorKind::DegenerateSample,
                "skewness needs n >= 2 and a non-constant sample");
  }
  const double m = kernels::mean(sample);
  const double m2 = kernels::sum_sq_dev(sample, m) / static_cast<double>(n);
  double m3 = 0.0;
  for (double x : sample) {
    const double d = x - m;
    m3 += d * d * d;
  }
  m3 /= static_cast<double>(n);
  return m3 / std::pow(m2, 1.5);
}

SummaryStats analyze_sample(std::span<const double> sample, double alpha) {
  const std::size_t n = sample.size();
  if (n == 0) {
    throw Error(ErrorKind::EmptyMatrix, "empty sample");
  }
  SummaryStats s;
  s.n = n;
  s.alpha = alpha;
  s.mean = kernels::mean(sample);

  if (n < 2) {
    s.variance = MaybeStat::undefined("needs n >= 2");
    s.ci_lo = MaybeStat::undefined("needs n >= 2");
    s.ci_hi = MaybeStat::undefined("needs n >= 2");
  } else {
    s.variance = MaybeStat::of(kernels::sum_sq_dev(sample, s.mean) /
                               static_cast<double>(n - 1));
    const auto [lo, hi] = confidence_interval(sample, alpha);
    s.ci_lo = MaybeStat::of(lo);
    s.ci_hi = MaybeStat::of(hi);
  }

  const bool constant = is_constant(sample);
  if (constant) {
    s.skewness = MaybeStat::undefined("constant sample");
  } else if (n < 2) {
    s.skewness = MaybeStat::undefined("needs n >= 2");
  } else {
    s.skewness = MaybeStat::of(skewness(sample));
  }

  if (n < 3 || n > 5000) {
    s.sw_w = MaybeStat::undefined("needs 3 <= n <= 5000");
    s.sw_p = s.sw_w;
  } else if (constant) {
    s.sw_w = MaybeStat::undefined("constant sample");
    s.sw_p = s.sw_w;
  } else {
    const SwResult sw = shapiro_wilk(sample);
    s.sw_w = MaybeStat::of(sw.w);
    s.sw_p = MaybeStat::of(sw.p);
  }
  return s;
}

std::vector<SummaryStats> stats_analyze(const FMMatrix& fm, double alpha) {
  if (fm.n == 0 || fm.m == 0) {
    throw Error(ErrorKind::EmptyMatrix, "FM matrix '" + fm.tag + "'");
  }
  std::vector<SummaryStats> out;
  out.reserve(fm.m);
  for (std::size_t j = 0; j < fm.m; ++j) {
    const std::vector<double> col = fm.fm_column(j);
    SummaryStats s = analyze_sample(col, alpha);
    s.fm_name = fm.fm_names[j].display();
    out.push_back(std::move(s));
  }
  return out;
}

std::string summary_stats_to_json(const std::vector<SummaryStats>& stats,
                                  const std::string& tag) {
  ordered_json doc;
  doc["tag"] = tag;
  doc["alpha"] = stats.empty() ? 0.05 : stats[0].alpha;
  doc["measures"] = ordered_json::array();
  for (const auto& s : stats) {
    ordered_json item;
    item["fm"] = s.fm_name;
    item["n"] = s.n;
    item["mean"] = s.mean;
    item["variance"] = maybe_to_json(s.variance);
    item["ci_lo"] = maybe_to_json(s.ci_lo);
    item["ci_hi"] = maybe_to_json(s.ci_hi);
    item["sw_w"] = maybe_to_json(s.sw_w);
    item["sw_p"] = maybe_to_json(s.sw_p);
    item["skewness"] = maybe_to_json(s.skewness);
    doc["measures"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::vector<double> moving_average(std::span<const double> series,
                                   std::size_t w) {
  const std::size_t n = series.size();
  std::vector<double> out(series.begin(), series.end());
  if (w == 0 || n == 0) return out;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series[i];
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= w ? i - w : 0;
    const std::size_t hi = std::min(n - 1, i + w);
    out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

Histogram histogram(std::span<const double> sample, std::size_t nbins) {
  if (sample.empty()) {
    throw Error(ErrorKind::TooFewObservations, "histogram of empty sample");
  }
  if (nbins == 0) {
    throw Error(ErrorKind::DomainError, "histogram needs nbins >= 1");
  }
  const kernels::MinMax mm = kernels::minmax(sample);
  double lo = mm.min, hi = mm.max;
  if (lo == hi) {  // constant sample: synthetic unit-width range
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges.resize(nbins + 1);
  const double span = hi - lo;
  for (std::size_t i = 0; i <= nbins; ++i) {
    h.edges[i] = lo + span * static_cast<double>(i) / static_cast<double>(nbins);
  }
  h.edges[nbins] = hi;
  h.counts.assign(nbins, 0);
  for (double x : sample) {
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - h.edges.begin());
    idx = idx > 0 ? idx - 1 : 0;
    if (idx >= nbins) idx = nbins - 1;  // last bin is closed
    ++h.counts[idx];
  }
  return h;
}

std::vector<std::pair<double, double>> qq_points(
    std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 2) {
    throw Error(ErrorKind::TooFewObservations, "qq_points needs n >= 2");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double p = (static_cast<double>(i) - 0.5) / static_cast<double>(n);
    pts.emplace_back(numerics::normal_quantile(p), sorted[i - 1]);
  }
  return pts;
}

Ecdf ecdf(std::span<const double> sample) {
  if (sample.empty()) {
    throw Error(ErrorKind::TooFewObservations, "ecdf of empty sample");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  Ecdf e;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    e.x.push_back(sorted[i]);
    e.f.push_back(static_cast<double>(i + 1) / n);
  }
  return e;
}

double sample_quantile(std::span<const double> sample, double p) {
  if (sample.empty()) {
    throw Error(ErrorKind::TooFewObservations, "quantile of empty sample");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::DomainError, "quantile needs p in [0,1]");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t i = static_cast<std::size_t>(h);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace simout

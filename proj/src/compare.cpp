#include "simout/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "simout/error.hpp"
#include "simout/kernels.hpp"
#include "simout/numerics.hpp"

namespace simout {

using ordered_json = nlohmann::ordered_json;

namespace {

bool all_equal(std::span<const double> xs, double v) {
  for (double x : xs) {
    if (x != v) return false;
  }
  return true;
}

struct Moments {
  double mean;
  double var;  // sample variance, n-1
  std::size_t n;
};

Moments moments(std::span<const double> xs) {
  const double m = kernels::mean(xs);
  const std::size_t n = xs.size();
  const double var =
      n > 1 ? kernels::sum_sq_dev(xs, m) / static_cast<double>(n - 1) : 0.0;
  return {m, var, n};
}

double two_sided_t_p(double t, double nu) {
  return 2.0 * (1.0 - numerics::student_t_cdf(std::fabs(t), nu));
}

// Exact two-sided Mann-Whitney p by enumerating every assignment of na
// ranks out of na+nb (no ties assumed). p = 2*min(P(U<=u), P(U>=u)), capped
// at 1.
double mann_whitney_exact(std::size_t na, std::size_t nb, double u_obs) {
  const std::size_t n = na + nb;
  std::vector<std::size_t> idx(na);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t total = 0, le = 0, ge = 0;
  const double eps = 1e-9;
  while (true) {
    std::size_t rank_sum = 0;
    for (std::size_t i : idx) rank_sum += i + 1;
    const double u = static_cast<double>(rank_sum) -
                     static_cast<double>(na * (na + 1)) / 2.0;
    ++total;
    if (u <= u_obs + eps) ++le;
    if (u >= u_obs - eps) ++ge;
    // next combination
    std::size_t i = na;
    while (i > 0 && idx[i - 1] == n - na + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < na; ++j) idx[j] = idx[j - 1] + 1;
  }
  const double p = 2.0 * std::min(static_cast<double>(le),
                                  static_cast<double>(ge)) /
                   static_cast<double>(total);
  return std::min(1.0, p);
}

}  // namespace

std::vector<double> midranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return pooled[i] < pooled[j];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

TestKind TestSpec::test_for(std::size_t fm_index, std::size_t m) const {
  if (per_fm_tests.empty()) return TestKind::Parametric;
  if (per_fm_tests.size() == 1) return per_fm_tests[0];
  if (per_fm_tests.size() != m) {
    throw Error(ErrorKind::DimensionMismatch,
                "per-FM test list length " +
                    std::to_string(per_fm_tests.size()) + " != m " +
                    std::to_string(m));
  }
  return per_fm_tests[fm_index];
}

double t_test2(std::span<const double> a, std::span<const double> b,
               TVariant variant) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::TooFewObservations,
                "t test needs >= 2 observations per sample");
  }
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  if (ma.var == 0.0 && mb.var == 0.0) {
    // Both samples constant: equal means are perfect alignment, unequal
    // means are certain misalignment.
    return ma.mean == mb.mean ? 1.0 : 0.0;
  }
  const double na = static_cast<double>(ma.n);
  const double nb = static_cast<double>(mb.n);
  double t, nu;
  if (variant == TVariant::PooledT) {
    const double sp2 =
        ((na - 1.0) * ma.var + (nb - 1.0) * mb.var) / (na + nb - 2.0);
    t = (ma.mean - mb.mean) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
    nu = na + nb - 2.0;
  } else {
    const double va = ma.var / na;
    const double vb = mb.var / nb;
    t = (ma.mean - mb.mean) / std::sqrt(va + vb);
    nu = (va + vb) * (va + vb) /
         (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  }
  if (!std::isfinite(t)) return 0.0;  // zero pooled variance, means differ
  return two_sided_t_p(t, nu);
}

double mann_whitney(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorKind::TooFewObservations,
                "Mann-Whitney needs non-empty samples");
  }
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];
  const double u = rank_sum_a - static_cast<double>(na * (na + 1)) / 2.0;

  // Tie census over the pooled sample.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  bool has_ties = false;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1.0) {
      has_ties = true;
      tie_term += t * t * t - t;
    }
    i = j + 1;
  }

  if (n <= 12 && !has_ties) {
    return mann_whitney_exact(na, nb, u);
  }

  const double dn = static_cast<double>(n);
  const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  const double var = static_cast<double>(na) * static_cast<double>(nb) /
                     12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (var <= 0.0) return 1.0;  // every value tied: indistinguishable
  const double z = (std::fabs(u - mu) - 0.5) / std::sqrt(var);
  if (z <= 0.0) return 1.0;
  return std::min(1.0, 2.0 * (1.0 - numerics::normal_cdf(z)));
}

double anova1(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw Error(ErrorKind::DegenerateInput, "anova needs k >= 2 groups");
  }
  std::size_t total_n = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw Error(ErrorKind::TooFewObservations,
                  "anova needs >= 2 observations per group");
    }
    total_n += g.size();
  }
  double grand_sum = 0.0;
  for (const auto& g : groups) grand_sum += kernels::sum(g);
  const double grand_mean = grand_sum / static_cast<double>(total_n);

  double ssb = 0.0, ssw = 0.0;
  bool all_same = true;
  for (const auto& g : groups) {
    const double gm = kernels::mean(g);
    const double d = gm - grand_mean;
    ssb += static_cast<double>(g.size()) * d * d;
    ssw += kernels::sum_sq_dev(g, gm);
    if (!all_equal(g, groups[0][0])) all_same = false;
  }
  if (all_same) {
    throw Error(ErrorKind::DegenerateInput, "anova on identical values");
  }
  const double k = static_cast<double>(groups.size());
  const double df1 = k - 1.0;
  const double df2 = static_cast<double>(total_n) - k;
  if (ssw == 0.0) return 0.0;  // separated constant groups
  const double f = (ssb / df1) / (ssw / df2);
  return 1.0 - numerics::f_cdf(f, df1, df2);
}

double kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw Error(ErrorKind::DegenerateInput,
                "kruskal-wallis needs k >= 2 groups");
  }
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) {
      throw Error(ErrorKind::TooFewObservations,
                  "kruskal-wallis needs non-empty groups");
    }
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const std::size_t n = pooled.size();
  if (n < 3) {
    throw Error(ErrorKind::TooFewObservations,
                "kruskal-wallis needs N >= 3");
  }
  if (all_equal(pooled, pooled[0])) {
    throw Error(ErrorKind::DegenerateInput,
                "kruskal-wallis on identical values");
  }
  const std::vector<double> ranks = midranks(pooled);

  const double dn = static_cast<double>(n);
  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) r += ranks[offset + i];
    h += r * r / static_cast<double>(g.size());
    offset += g.size();
  }
  h = 12.0 / (dn * (dn + 1.0)) * h - 3.0 * (dn + 1.0);

  // Tie correction.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1.0) tie_term += t * t * t - t;
    i = j + 1;
  }
  const double correction = 1.0 - tie_term / (dn * dn * dn - dn);
  if (correction <= 0.0) {
    throw Error(ErrorKind::DegenerateInput,
                "kruskal-wallis tie correction degenerate");
  }
  h /= correction;
  return 1.0 - numerics::chi2_cdf(h, static_cast<double>(groups.size()) - 1.0);
}

CompareResult stats_compare(const std::vector<FMMatrix>& fms,
                            const TestSpec& spec) {
  if (fms.size() < 2) {
    throw Error(ErrorKind::DegenerateInput,
                "stats_compare needs k >= 2 FM matrices");
  }
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
    throw Error(ErrorKind::DomainError, "alpha must be in (0,1)");
  }
  const std::size_t m = fms[0].m;
  for (const auto& fm : fms) {
    if (fm.m != m || fm.fm_names != fms[0].fm_names) {
      throw Error(ErrorKind::FMNameMismatch,
                  "FM matrices '" + fms[0].tag + "' and '" + fm.tag +
                      "' have different focal measures");
    }
  }
  CompareResult result;
  result.alpha = spec.alpha;
  for (std::size_t j = 0; j < m; ++j) {
    result.fm_names.push_back(fms[0].fm_names[j].display());
    std::vector<std::vector<double>> groups;
    groups.reserve(fms.size());
    for (const auto& fm : fms) groups.push_back(fm.fm_column(j));

    bool identical = true;
    for (const auto& g : groups) {
      if (!all_equal(g, groups[0][0])) {
        identical = false;
        break;
      }
    }
    const TestKind kind = spec.test_for(j, m);
    double p;
    std::string test_name;
    try {
      if (fms.size() == 2) {
        if (kind == TestKind::Parametric) {
          test_name = spec.variant == TVariant::PooledT ? "t" : "t-welch";
          p = identical ? 1.0 : t_test2(groups[0], groups[1], spec.variant);
        } else {
          test_name = "mann-whitney";
          p = identical ? 1.0 : mann_whitney(groups[0], groups[1]);
        }
      } else {
        if (kind == TestKind::Parametric) {
          test_name = "anova";
          p = identical ? 1.0 : anova1(groups);
        } else {
          test_name = "kruskal-wallis";
          p = identical ? 1.0 : kruskal_wallis(groups);
        }
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "FM '" + result.fm_names.back() + "': " +
                                e.what());
    }
    result.p_values.push_back(p);
    result.tests_used.push_back(test_name);
    result.failed.push_back(p < spec.alpha);
    if (p < spec.alpha) ++result.n_failed;
  }
  return result;
}

PairwiseTable stats_compare_pw(const std::vector<FMMatrix>& fms,
                               const TestSpec& spec) {
  if (fms.size() < 2) {
    throw Error(ErrorKind::DegenerateInput,
                "pairwise comparison needs k >= 2 FM matrices");
  }
  PairwiseTable table;
  for (const auto& fm : fms) table.labels.push_back(fm.tag);
  const std::size_t k = fms.size();
  table.fail_counts.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const CompareResult r = stats_compare({fms[i], fms[j]}, spec);
      table.fail_counts[i][j] = r.n_failed;
      table.fail_counts[j][i] = r.n_failed;
    }
  }
  return table;
}

std::string compare_result_to_json(const CompareResult& r,
                                   const std::vector<std::string>& tags) {
  ordered_json doc;
  doc["tags"] = tags;
  doc["alpha"] = r.alpha;
  doc["measures"] = ordered_json::array();
  for (std::size_t j = 0; j < r.p_values.size(); ++j) {
    doc["measures"].push_back({{"fm", r.fm_names[j]},
                               {"test", r.tests_used[j]},
                               {"p", r.p_values[j]},
                               {"failed", static_cast<bool>(r.failed[j])}});
  }
  doc["n_failed"] = r.n_failed;
  return doc.dump(2) + "\n";
}

std::string pairwise_table_to_json(const PairwiseTable& t) {
  ordered_json doc;
  doc["labels"] = t.labels;
  doc["fail_counts"] = t.fail_counts;
  return doc.dump(2) + "\n";
}

std::string pairwise_table_to_text(const PairwiseTable& t) {
  const std::size_t k = t.labels.size();
  std::size_t width = 1;
  for (const auto& label : t.labels) width = std::max(width, label.size());
  for (const auto& row : t.fail_counts) {
    for (std::size_t v : row) {
      width = std::max(width, std::to_string(v).size());
    }
  }
  auto pad = [&](const std::string& s) {
    return std::string(width - s.size(), ' ') + s;
  };
  std::string out = pad("");
  for (const auto& label : t.labels) out += "  " + pad(label);
  out += "\n";
  for (std::size_t i = 0; i < k; ++i) {
    out += pad(t.labels[i]);
    for (std::size_t j = 0; j < k; ++j) {
      out += "  " + pad(std::to_string(t.fail_counts[i][j]));
    }
    out += "\n";
  }
  return out;
}

}  // namespace simout

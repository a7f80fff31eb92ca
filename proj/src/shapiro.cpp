// Shapiro-Wilk W test, Royston's AS R94 approximation: polynomial fits for
// the coefficients and for the normalizing transformation of W, exact p for
// n == 3. Censoring extensions are not implemented.

#include <algorithm>
#include <cmath>
#include <vector>

#include "simout/error.hpp"
#include "simout/numerics.hpp"
#include "simout/stats.hpp"

namespace simout {

namespace {

double poly(const double* c, int n, double x) {
  double r = c[0];
  double xp = 1.0;
  for (int i = 1; i < n; ++i) {
    xp *= x;
    r += c[i] * xp;
  }
  return r;
}

const double kC1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685,
                       -2.706056};
const double kC2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633,
                       -3.582633};
const double kC3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
const double kC4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
const double kC5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
const double kC6[3] = {-0.4803, -0.082676, 0.0030302};
const double kG[2] = {-2.273, 0.459};

}  // namespace

SwResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) {
    throw Error(ErrorKind::SampleSizeOutOfRange,
                "Shapiro-Wilk needs 3 <= n <= 5000, got " +
                    std::to_string(n));
  }
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0.0)) {
    throw Error(ErrorKind::DegenerateSample,
                "Shapiro-Wilk on a constant sample");
  }

  const double an = static_cast<double>(n);
  const std::size_t n2 = n / 2;
  std::vector<double> a(n2);

  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    // Expected normal order statistics via Blom scores, then Royston's
    // correction of the two extreme weights and renormalization.
    double summ2 = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      a[i] = numerics::normal_quantile((static_cast<double>(i + 1) - 0.375) /
                                       (an + 0.25));
      summ2 += a[i] * a[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kC1, 6, rsn) - a[0] / ssumm2;
    std::size_t i1;
    double fac;
    if (n > 5) {
      i1 = 2;
      const double a2 = -a[1] / ssumm2 + poly(kC2, 6, rsn);
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
    } else {
      i1 = 1;
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = i1; i < n2; ++i) a[i] = -a[i] / fac;
  }

  // Antisymmetric coefficient for sorted position i.
  auto coef = [&](std::size_t i) -> double {
    const std::size_t j = n - 1 - i;
    if (i < j) return -a[i];
    if (i > j) return a[j];
    return 0.0;
  };

  // W as the squared correlation between coefficients and sorted data,
  // computed in scaled coordinates as 1 - w1 for precision near W = 1.
  double sx = 0.0;
  for (double v : x) sx += v / range;
  sx /= an;
  double ssx = 0.0, ssa = 0.0, sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xd = x[i] / range - sx;
    const double ad = coef(i);  // coefficients sum to zero
    ssx += xd * xd;
    ssa += ad * ad;
    sax += ad * xd;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  double pw;
  if (n == 3) {
    const double pi6 = 1.90985931710274;    // 6/pi
    const double stqr = 1.04719755119660;   // pi/3
    pw = pi6 * (std::asin(std::sqrt(w)) - stqr);
    pw = std::clamp(pw, 0.0, 1.0);
    return {w, pw};
  }

  double y = std::log1p(-w);
  double m, s;
  if (n <= 11) {
    const double gamma = poly(kG, 2, an);
    if (y >= gamma) {
      return {w, 1e-19};  // W so small the transform saturates
    }
    y = -std::log(gamma - y);
    m = poly(kC3, 4, an);
    s = std::exp(poly(kC4, 4, an));
  } else {
    const double logn = std::log(an);
    m = poly(kC5, 4, logn);
    s = std::exp(poly(kC6, 3, logn));
  }
  pw = 1.0 - numerics::normal_cdf((y - m) / s);
  return {w, pw};
}

}  // namespace simout

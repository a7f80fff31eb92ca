#ifndef SIMOUT_NUMERICS_HPP_
#define SIMOUT_NUMERICS_HPP_

// Special functions and distribution CDFs/quantiles the test layer is built
// on. All functions are pure and thread-safe.

namespace simout::numerics {

// Convergence control for the continued-fraction and series evaluations.
struct Tolerance {
  double rel_eps = 1e-12;
  int max_iter = 300;
};

double normal_pdf(double x);
double normal_cdf(double x);

// Inverse standard normal CDF. Rational approximation refined by one Halley
// step; |cdf(quantile(p)) - p| < 1e-12 over (0,1). Throws DomainError for
// p outside (0,1).
double normal_quantile(double p);

// Regularized incomplete beta I_x(a,b). Lentz continued fraction, symmetry
// split at x = (a+1)/(a+b+2). Throws NoConvergence past tol.max_iter.
double reg_incomplete_beta(double a, double b, double x,
                           const Tolerance& tol = {});

// Regularized lower incomplete gamma P(s,x). Series for x < s+1, continued
// fraction otherwise.
double reg_incomplete_gamma(double s, double x, const Tolerance& tol = {});

double student_t_cdf(double t, double nu);
double student_t_quantile(double p, double nu);
double f_cdf(double x, double d1, double d2);
double chi2_cdf(double x, double k);

}  // namespace simout::numerics

#endif  // SIMOUT_NUMERICS_HPP_

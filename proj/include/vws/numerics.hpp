// Scalar special functions, log-domain arithmetic, 1-d optimizers and
// adaptive quadrature shared by the rest of the library.
#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace vws {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

using ScalarFn = std::function<double(double)>;

// log(sum_i exp(v_i)) with the max-shift trick; exact -inf when all
// entries are -inf.  Throws std::invalid_argument on an empty list.
double log_sum_exp(std::span<const double> values);

// log(e^a + e^b)
double log_add_exp(double a, double b);

// log(e^a - e^b); requires a >= b, returns -inf when a == b.
double log_sub_exp(double a, double b);

struct MinimizeResult {
  double x = 0.0;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
  // f appears unbounded below on the interval; x/f hold the best iterate.
  bool diverged = false;
};

// Brent minimization on a bounded interval.  The endpoints are evaluated
// explicitly and returned if they beat the interior optimum; evaluation
// at a boundary where f is undefined falls back to a nudged-inward limit.
// NaN at an interior point throws std::runtime_error.
MinimizeResult brent_minimize(const ScalarFn& f, double a, double b,
                              double tol, int max_evals = 500);

// Minimization over (a, b) where either side may be infinite.  Bounded
// intervals delegate to brent_minimize; otherwise the interval is mapped
// to the real line via t(z) in {z, a+e^z, b-e^{-z}} and minimized with a
// bracketing line search.  Divergence toward an infinite end is flagged.
MinimizeResult minimize_on_interval(const ScalarFn& f, double a, double b,
                                    double tol, int max_evals = 500);

// log I_nu(x) - x, the log of the exponentially scaled modified Bessel
// function of the first kind.  Power series with log-domain term
// accumulation for small x, large-argument asymptotic expansion beyond.
double log_bessel_i_scaled(double nu, double x);

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;  // error flag: panel budget exhausted when false
};

// Globally adaptive bisection with a nested Gauss-Kronrod 7-15 rule.
QuadResult adaptive_quadrature(const ScalarFn& f, double a, double b,
                               double tol = 1e-10, int max_evals = 10000);

// log of integral exp(log_f) over (lo, hi], hi may be +inf.  The integrand
// is rescaled by its largest probe value so regions with very small mass
// keep relative precision.  Unbounded tails use a compactifying change of
// variables.
double log_integral(const ScalarFn& log_f, double lo, double hi,
                    double tol = 1e-10, int max_evals = 10000);

// Standard normal helpers.  log_normal_cdf stays accurate far into the
// lower tail (Mills-ratio expansion below z = -20).
double normal_cdf(double z);
double log_normal_cdf(double z);
double normal_quantile(double p);
// log(Phi(hi) - Phi(lo)) for a standard normal, stable when both ends
// sit in the same far tail.
double log_normal_interval(double lo, double hi);

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Dense BFGS with backtracking line search; grad may be empty, in which
// case central finite differences are used.
BfgsResult bfgs_minimize(
    const std::function<double(std::span<const double>)>& f,
    const std::function<std::vector<double>(std::span<const double>)>& grad,
    std::span<const double> x0, double tol = 1e-10, int max_evals = 500);

}  // namespace vws

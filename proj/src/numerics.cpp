#include "vws/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace vws {

double log_add_exp(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_sub_exp(double a, double b) {
  if (b == neg_inf) return a;
  if (a < b) throw std::invalid_argument("log_sub_exp: a < b");
  if (a == b) return neg_inf;
  return a + std::log1p(-std::exp(b - a));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("log_sum_exp: empty list");
  double m = neg_inf;
  for (double v : values) m = std::max(m, v);
  if (m == neg_inf) return neg_inf;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

namespace {

// Evaluate f at a boundary point, nudging inward when the endpoint itself
// is undefined (NaN).  `toward` is the interior direction.
double endpoint_value(const ScalarFn& f, double x, double toward, int& evals) {
  double v = f(x);
  ++evals;
  if (!std::isnan(v)) return v;
  const double scale = std::max(1.0, std::abs(x));
  for (double rel : {1e-12, 1e-9, 1e-6}) {
    v = f(x + toward * rel * scale);
    ++evals;
    if (!std::isnan(v)) return v;
  }
  return pos_inf;  // treat as "no information": never the minimum
}

double interior_eval(const ScalarFn& f, double x, int& evals) {
  const double v = f(x);
  ++evals;
  if (std::isnan(v))
    throw std::runtime_error("minimizer: non-finite objective at x=" +
                             std::to_string(x));
  return v;
}

}  // namespace

MinimizeResult brent_minimize(const ScalarFn& f, double a, double b,
                              double tol, int max_evals) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("brent_minimize: need finite a < b");
  MinimizeResult res;
  int evals = 0;

  static const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  double lo = a, hi = b;
  double x = lo + golden * (hi - lo);
  double w = x, v = x;
  double fx = interior_eval(f, x, evals);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  while (evals < max_evals) {
    const double mid = 0.5 * (lo + hi);
    const double tol1 = tol * std::abs(x) + 1e-15;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (hi - lo)) {
      res.converged = true;
      break;
    }
    double u;
    bool parabolic = false;
    if (std::abs(e) > tol1) {
      // parabolic fit through x, v, w
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (lo - x) &&
          p < q * (hi - x)) {
        d = p / q;
        u = x + d;
        if (u - lo < tol2 || hi - u < tol2) d = (mid > x) ? tol1 : -tol1;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x < mid) ? hi - x : lo - x;
      d = golden * e;
    }
    u = (std::abs(d) >= tol1) ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = interior_eval(f, u, evals);
    if (fu <= fx) {
      if (u < x) hi = x; else lo = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) lo = u; else hi = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }

  res.x = x;
  res.f = fx;

  // endpoints may hold the true minimum (monotone objectives, boundary
  // optima); check them explicitly
  const double fa = endpoint_value(f, a, +1.0, evals);
  const double fb = endpoint_value(f, b, -1.0, evals);
  if (fa < res.f) { res.x = a; res.f = fa; }
  if (fb < res.f) { res.x = b; res.f = fb; }
  res.evaluations = evals;
  return res;
}

MinimizeResult minimize_on_interval(const ScalarFn& f, double a, double b,
                                    double tol, int max_evals) {
  if (!(a < b)) throw std::invalid_argument("minimize_on_interval: a >= b");
  if (std::isfinite(a) && std::isfinite(b))
    return brent_minimize(f, a, b, tol, max_evals);

  // map (a,b) onto the real line
  ScalarFn t;
  if (!std::isfinite(a) && !std::isfinite(b))
    t = [](double z) { return z; };
  else if (std::isfinite(a))
    t = [a](double z) { return a + std::exp(z); };
  else
    t = [b](double z) { return b - std::exp(-z); };
  auto g = [&](double z) { return f(t(z)); };

  MinimizeResult res;
  int evals = 0;

  // expand a bracket around z = 0 until the center beats both ends
  double zl = -1.0, zc = 0.0, zr = 1.0;
  double fl = interior_eval(g, zl, evals);
  double fc = interior_eval(g, zc, evals);
  double fr = interior_eval(g, zr, evals);
  const double z_cap = 700.0;  // exp() overflow guard on the transform
  while (!(fc <= fl && fc <= fr) && evals < max_evals) {
    if (fl < fc) {  // walk left
      zr = zc; fr = fc;
      zc = zl; fc = fl;
      zl = zc - 2.0 * (zr - zc);
      if (zl < -z_cap) { res.diverged = true; break; }
      fl = interior_eval(g, zl, evals);
    } else {  // walk right
      zl = zc; fl = fc;
      zc = zr; fc = fr;
      zr = zc + 2.0 * (zc - zl);
      if (zr > z_cap) { res.diverged = true; break; }
      fr = interior_eval(g, zr, evals);
    }
  }

  if (res.diverged) {
    // report the best iterate seen
    res.x = t(zc);
    res.f = fc;
    if (fl < res.f) { res.x = t(zl); res.f = fl; }
    if (fr < res.f) { res.x = t(zr); res.f = fr; }
  } else {
    MinimizeResult inner =
        brent_minimize(g, zl, zr, tol, std::max(10, max_evals - evals));
    res.x = t(inner.x);
    res.f = inner.f;
    res.converged = inner.converged;
    evals += inner.evaluations;
  }

  // directional limits at finite endpoints
  if (std::isfinite(a)) {
    const double fa = endpoint_value(f, a, +1.0, evals);
    if (fa < res.f) { res.x = a; res.f = fa; }
  }
  if (std::isfinite(b)) {
    const double fb = endpoint_value(f, b, -1.0, evals);
    if (fb < res.f) { res.x = b; res.f = fb; }
  }
  res.evaluations = evals;
  return res;
}

double log_bessel_i_scaled(double nu, double x) {
  if (nu < 0.0 || x < 0.0 || std::isnan(nu) || std::isnan(x))
    throw std::invalid_argument("log_bessel_i_scaled: need nu >= 0, x >= 0");
  if (x == 0.0) return (nu == 0.0) ? 0.0 : neg_inf;

  const double mu = 4.0 * nu * nu;
  // large-argument asymptotic: valid once the expansion terms decrease
  // from the start; otherwise the series handles any (nu, x) exactly
  if (x > 20.0 && mu <= 4.0 * x) {
    double term = 1.0, sum = 1.0;
    double prev = pos_inf;
    for (int k = 1; k < 200; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= -(mu - odd * odd) / (8.0 * k * x);
      if (std::abs(term) >= prev) break;  // asymptotic tail turned around
      sum += term;
      prev = std::abs(term);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return -0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
  }

  // power series sum_m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)), accumulated
  // term by term in the log domain
  const double lx2 = std::log(0.5 * x);
  double log_term = nu * lx2 - std::lgamma(nu + 1.0);
  double acc = log_term;
  for (int m = 1; m < 1000000; ++m) {
    log_term += 2.0 * lx2 - std::log(double(m)) - std::log(m + nu);
    acc = log_add_exp(acc, log_term);
    if (log_term < acc - 45.0 && 2.0 * m > x - nu) break;
  }
  return acc - x;
}

namespace {

// Gauss-Kronrod 7-15 nodes (positive half) and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double fsum = (j == 7)
                            ? f(c)
                            : f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  const double diff = std::abs(resk - resg) * h;
  // standard QUADPACK-style sharpening of the |K15-G7| estimate
  p.error = diff;
  if (diff > 0.0) p.error = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(p.value), 1e-300), 1.5));
  p.error = std::max(p.error, std::abs(p.value) * 1e-15);
  return p;
}

}  // namespace

QuadResult adaptive_quadrature(const ScalarFn& f, double a, double b,
                               double tol, int max_evals) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("adaptive_quadrature: need finite a < b");
  QuadResult out;
  std::priority_queue<Panel> panels;
  panels.push(gk15(f, a, b));
  out.evaluations = 15;
  double value = panels.top().value, error = panels.top().error;
  while (out.evaluations + 30 <= max_evals) {
    if (error <= std::max(tol, tol * std::abs(value))) break;
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {  // interval exhausted
      panels.push(worst);
      break;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  out.value = value;
  out.abs_error_estimate = std::max(error, 0.0);
  out.converged = error <= std::max(tol, tol * std::abs(value));
  return out;
}

double log_integral(const ScalarFn& log_f, double lo, double hi, double tol,
                    int max_evals) {
  if (!(lo < hi)) throw std::invalid_argument("log_integral: lo >= hi");
  ScalarFn lf = log_f;
  double a = lo, b = hi;
  if (!std::isfinite(hi)) {
    // x = lo + t/(1-t) maps (0,1) -> (lo, inf); dx = dt/(1-t)^2
    a = 0.0;
    b = 1.0;
    lf = [log_f, lo](double t) {
      const double one_m = 1.0 - t;
      return log_f(lo + t / one_m) - 2.0 * std::log(one_m);
    };
  }
  // probe for a scale so the linear-domain quadrature keeps relative
  // precision even when the region mass is astronomically small
  double scale = neg_inf;
  for (int i = 1; i <= 7; ++i)
    scale = std::max(scale, lf(a + (b - a) * i / 8.0));
  if (scale == neg_inf || scale == pos_inf) {
    // fall back to a finer probe before declaring the region empty
    for (int i = 1; i < 64; ++i)
      scale = std::max(scale, lf(a + (b - a) * i / 64.0));
    if (scale == neg_inf) return neg_inf;
    if (scale == pos_inf)
      throw std::runtime_error("log_integral: integrand is infinite");
  }
  auto g = [&](double x) {
    const double v = lf(x);
    return (v == neg_inf) ? 0.0 : std::exp(v - scale);
  };
  QuadResult q = adaptive_quadrature(g, a, b, tol, max_evals);
  if (q.value <= 0.0) return neg_inf;
  return scale + std::log(q.value);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double log_normal_cdf(double z) {
  if (z >= 0.0) return std::log1p(-0.5 * std::erfc(z * M_SQRT1_2));
  if (z > -20.0) return std::log(0.5 * std::erfc(-z * M_SQRT1_2));
  // Mills-ratio asymptotic: Phi(z) = phi(z)/|z| (1 - 1/z^2 + 3/z^4 - ...)
  const double zz = z * z, inv = 1.0 / zz;
  double series = 1.0, term = 1.0;
  for (int k = 1; k <= 7; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    series += term;
  }
  return -0.5 * zz - 0.5 * std::log(2.0 * M_PI) - std::log(-z) +
         std::log(series);
}

double normal_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("normal_quantile: p outside [0,1]");
  if (p == 0.0) return neg_inf;
  if (p == 1.0) return pos_inf;
  // Acklam's rational approximation ...
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // ... plus one Halley refinement against erfc
  const double e = 0.5 * std::erfc(-x * M_SQRT1_2) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double log_normal_interval(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("log_normal_interval: lo >= hi");
  if (lo >= 0.0) return log_normal_interval(-hi, -lo);
  if (hi <= 0.0) return log_sub_exp(log_normal_cdf(hi), log_normal_cdf(lo));
  // straddles zero: both erf arguments are small, linear domain is exact
  const double p = 0.5 * (std::erf(hi * M_SQRT1_2) - std::erf(lo * M_SQRT1_2));
  return std::log(p);
}

BfgsResult bfgs_minimize(
    const std::function<double(std::span<const double>)>& f,
    const std::function<std::vector<double>(std::span<const double>)>& grad,
    std::span<const double> x0, double tol, int max_evals) {
  const size_t n = x0.size();
  BfgsResult res;
  res.x.assign(x0.begin(), x0.end());
  int evals = 0;

  auto eval = [&](std::span<const double> x) {
    ++evals;
    return f(x);
  };
  auto num_grad = [&](std::span<const double> x) {
    std::vector<double> g(n), xe(x.begin(), x.end());
    for (size_t i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
      xe[i] = x[i] + h;
      const double fp = eval(xe);
      xe[i] = x[i] - h;
      const double fm = eval(xe);
      xe[i] = x[i];
      g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
  };
  auto gradient = [&](std::span<const double> x) {
    if (grad) return grad(x);
    return num_grad(x);
  };

  std::vector<double> H(n * n, 0.0);  // inverse Hessian approximation
  for (size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;

  double fx = eval(res.x);
  std::vector<double> g = gradient(res.x);

  while (evals < max_evals) {
    // p = -H g
    std::vector<double> p(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) p[i] -= H[i * n + j] * g[j];
    double gnorm = 0.0, slope = 0.0;
    for (size_t i = 0; i < n; ++i) {
      gnorm += g[i] * g[i];
      slope += p[i] * g[i];
    }
    if (std::sqrt(gnorm) < tol) {
      res.converged = true;
      break;
    }
    if (slope >= 0.0) {  // reset to steepest descent
      for (size_t i = 0; i < n; ++i) {
        p[i] = -g[i];
        for (size_t j = 0; j < n; ++j) H[i * n + j] = (i == j);
      }
      slope = -gnorm;
    }
    // backtracking Armijo search
    double step = 1.0, fnew = fx;
    std::vector<double> xnew(n);
    bool ok = false;
    for (int ls = 0; ls < 40 && evals < max_evals; ++ls) {
      for (size_t i = 0; i < n; ++i) xnew[i] = res.x[i] + step * p[i];
      fnew = eval(xnew);
      if (std::isfinite(fnew) && fnew <= fx + 1e-4 * step * slope) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) break;
    std::vector<double> gnew = gradient(xnew);
    // BFGS update of the inverse Hessian
    std::vector<double> s(n), y(n);
    double sy = 0.0;
    for (size_t i = 0; i < n; ++i) {
      s[i] = xnew[i] - res.x[i];
      y[i] = gnew[i] - g[i];
      sy += s[i] * y[i];
    }
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      std::vector<double> Hy(n, 0.0);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) Hy[i] += H[i * n + j] * y[j];
      double yHy = 0.0;
      for (size_t i = 0; i < n; ++i) yHy += y[i] * Hy[i];
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          H[i * n + j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                          rho * (Hy[i] * s[j] + s[i] * Hy[j]);
    }
    res.x = xnew;
    fx = fnew;
    g = std::move(gnew);
  }
  res.f = fx;
  res.evaluations = evals;
  return res;
}

}  // namespace vws

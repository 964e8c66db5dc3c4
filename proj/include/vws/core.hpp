// Weighted-target abstraction: a base distribution reweighted by a
// nonnegative weight function on a (possibly truncated) interval support.
#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include "vws/numerics.hpp"

namespace vws {

// Support (lo, hi], half-open; either end may be infinite.
struct SupportInterval {
  double lo = neg_inf;
  double hi = pos_inf;

  bool contains(double x) const { return x > lo && x <= hi; }
};

// One cell (lo, hi] of a partition of the support; hi may be +inf.
struct Region {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x <= hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

enum class Curvature { LogConcave, LogConvex, LogLinear };

// Capability contract every base distribution provides.  Components
// returned by tilted() are themselves base distributions restricted to
// the region, so proposal machinery can sample and evaluate them.
class BaseDistribution {
 public:
  virtual ~BaseDistribution() = default;

  virtual double log_density(double x) const = 0;
  virtual double cdf(double x) const = 0;
  virtual double quantile(double phi) const = 0;
  virtual double region_log_probability(const Region& r) const = 0;

  struct Tilted {
    std::shared_ptr<const BaseDistribution> component;
    double log_mass;  // log integral of e^{s x} g(x) over the region
  };
  virtual Tilted tilted(const Region& r, double s) const = 0;

  // MGF of the base truncated to the region.
  virtual double truncated_mgf(const Region& r, double s) const = 0;

  virtual SupportInterval support() const = 0;
};

// f0(x) = w(x) g(x), log-domain throughout.  The curvature classifier is
// caller-certified per region; dlog_weight may be empty, in which case
// gradients fall back to central finite differences.
struct WeightedTarget {
  ScalarFn log_weight;
  ScalarFn dlog_weight;
  std::function<Curvature(const Region&)> curvature;
  std::shared_ptr<const BaseDistribution> base;
  SupportInterval support;
  // optional closed-form constant sup/inf of log w over a region, used by
  // the constant scheme instead of numeric optimization when available
  std::function<std::pair<double, double>(const Region&)> constant_bounds_hook;

  double grad_log_weight(double x) const {
    if (dlog_weight) return dlog_weight(x);
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    return (log_weight(x + h) - log_weight(x - h)) / (2.0 * h);
  }
};

inline double log_f0(const WeightedTarget& t, double x) {
  if (!t.support.contains(x))
    throw std::invalid_argument("log_f0: x outside support");
  const double lw = t.log_weight(x);
  if (lw == neg_inf) return neg_inf;
  return lw + t.base->log_density(x);
}

}  // namespace vws

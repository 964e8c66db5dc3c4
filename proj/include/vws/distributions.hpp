// Concrete base distributions: the doubly-truncated exponential (uniform
// is its zero-rate branch, the untruncated exponential its b = +inf
// branch) and the truncated normal.
#pragma once

#include "vws/core.hpp"

namespace vws {

// Density proportional to e^{kappa x} on (a, b].  kappa may have any
// sign; |kappa|(b-a) below 1e-10 switches to the exact uniform limit.
// b = +inf requires kappa < 0.
class DtExp final : public BaseDistribution {
 public:
  DtExp(double a, double b, double kappa);

  double a() const { return a_; }
  double b() const { return b_; }
  double kappa() const { return kappa_; }

  double log_density(double x) const override;
  double cdf(double x) const override;
  double quantile(double phi) const override;
  double region_log_probability(const Region& r) const override;
  Tilted tilted(const Region& r, double s) const override;
  double truncated_mgf(const Region& r, double s) const override;
  SupportInterval support() const override { return {a_, b_}; }

 private:
  double a_, b_, kappa_;
  double log_norm_;  // -log integral of e^{kappa x} over (a, b)
};

class TruncNormal final : public BaseDistribution {
 public:
  TruncNormal(double mean, double variance, double lo, double hi);

  double mean() const { return mean_; }
  double variance() const { return var_; }

  double log_density(double x) const override;
  double cdf(double x) const override;
  double quantile(double phi) const override;
  double region_log_probability(const Region& r) const override;
  Tilted tilted(const Region& r, double s) const override;
  double truncated_mgf(const Region& r, double s) const override;
  SupportInterval support() const override { return {lo_, hi_}; }

 private:
  double z(double x) const { return (x - mean_) / sd_; }

  double mean_, var_, sd_, lo_, hi_;
  double log_trunc_mass_;  // log P(lo < T < hi) under the untruncated normal
};

}  // namespace vws

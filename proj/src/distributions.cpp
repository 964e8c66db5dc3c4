#include "vws/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace vws {

namespace {

constexpr double kUniformSwitch = 1e-10;  // |rate| * width below this -> limit

// Whether the rate behaves as exactly zero on an interval of this width.
bool rate_is_zero(double rate, double width) {
  if (rate == 0.0) return true;
  return std::isfinite(width) && std::abs(rate) * width < kUniformSwitch;
}

// log of integral_{lo}^{hi} e^{r x} dx; hi may be +inf (requires r < 0).
double log_exp_integral(double r, double lo, double hi) {
  if (!std::isfinite(hi)) {
    if (r >= 0.0)
      throw std::invalid_argument(
          "DtExp: divergent integral on unbounded region (rate >= 0)");
    return r * lo - std::log(-r);
  }
  const double width = hi - lo;
  if (rate_is_zero(r, width)) return std::log(width);
  // |e^{r hi} - e^{r lo}| / |r|
  const double big = std::max(r * lo, r * hi);
  return big + std::log1p(-std::exp(-std::abs(r) * width)) -
         std::log(std::abs(r));
}

void check_region(const Region& r, double a, double b) {
  if (!(r.lo < r.hi) || r.lo < a - 1e-12 * std::max(1.0, std::abs(a)) ||
      r.hi > b + 1e-12 * std::max(1.0, std::abs(b)))
    throw std::invalid_argument("region not contained in distribution support");
}

}  // namespace

DtExp::DtExp(double a, double b, double kappa) : a_(a), b_(b), kappa_(kappa) {
  if (!(a < b) || !std::isfinite(a))
    throw std::invalid_argument("DtExp: need finite a < b");
  if (!std::isfinite(b) && kappa >= 0.0)
    throw std::invalid_argument("DtExp: b = +inf requires kappa < 0");
  log_norm_ = -log_exp_integral(kappa_, a_, b_);
}

double DtExp::log_density(double x) const {
  if (x < a_ || x > b_) return neg_inf;
  const double k = rate_is_zero(kappa_, b_ - a_) ? 0.0 : kappa_;
  return k * x + log_norm_;
}

double DtExp::cdf(double x) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(x));
  if (x < a_ - slack || (std::isfinite(b_) && x > b_ + slack))
    throw std::invalid_argument("DtExp::cdf: x outside [a,b]");
  x = std::max(x, a_);
  if (std::isfinite(b_)) x = std::min(x, b_);
  if (!std::isfinite(b_)) return -std::expm1(kappa_ * (x - a_));
  const double width = b_ - a_;
  if (rate_is_zero(kappa_, width)) return (x - a_) / width;
  if (std::abs(kappa_) * width < 500.0)
    return std::expm1(kappa_ * (x - a_)) / std::expm1(kappa_ * width);
  // log-domain form for extreme rates
  if (x == a_) return 0.0;
  const double num = log_exp_integral(kappa_, a_, x);
  const double den = log_exp_integral(kappa_, a_, b_);
  return std::exp(num - den);
}

double DtExp::quantile(double phi) const {
  if (!(phi >= 0.0 && phi <= 1.0))
    throw std::invalid_argument("DtExp::quantile: phi outside [0,1]");
  if (!std::isfinite(b_)) return a_ + std::log1p(-phi) / kappa_;
  const double width = b_ - a_;
  if (rate_is_zero(kappa_, width)) return a_ + phi * width;
  const double kw = kappa_ * width;
  if (kw > 0.0)
    return b_ + std::log(phi + (1.0 - phi) * std::exp(-kw)) / kappa_;
  return a_ + std::log1p(phi * std::expm1(kw)) / kappa_;
}

double DtExp::region_log_probability(const Region& r) const {
  check_region(r, a_, b_);
  return log_exp_integral(kappa_, r.lo, std::min(r.hi, b_)) + log_norm_;
}

BaseDistribution::Tilted DtExp::tilted(const Region& r, double s) const {
  check_region(r, a_, b_);
  const double rate = kappa_ + s;
  const double hi = std::min(r.hi, b_);
  if (!std::isfinite(hi) && rate >= 0.0)
    throw std::invalid_argument("DtExp::tilted: divergent on unbounded region");
  Tilted t;
  // exact in-family: the tilted, truncated base is again DtExp
  const double comp_rate =
      (std::isfinite(hi) && rate_is_zero(rate, hi - r.lo)) ? 0.0 : rate;
  t.component = std::make_shared<DtExp>(r.lo, hi, comp_rate);
  t.log_mass = log_norm_ + log_exp_integral(rate, r.lo, hi);
  return t;
}

double DtExp::truncated_mgf(const Region& r, double s) const {
  check_region(r, a_, b_);
  const double hi = std::min(r.hi, b_);
  if (!std::isfinite(hi) && kappa_ + s >= 0.0)
    throw std::invalid_argument("DtExp::truncated_mgf: divergent configuration");
  return std::exp(log_exp_integral(kappa_ + s, r.lo, hi) -
                  log_exp_integral(kappa_, r.lo, hi));
}

TruncNormal::TruncNormal(double mean, double variance, double lo, double hi)
    : mean_(mean), var_(variance), lo_(lo), hi_(hi) {
  if (!(variance > 0.0)) throw std::invalid_argument("TruncNormal: var <= 0");
  if (!(lo < hi)) throw std::invalid_argument("TruncNormal: lo >= hi");
  sd_ = std::sqrt(variance);
  if (!std::isfinite(lo) && !std::isfinite(hi))
    log_trunc_mass_ = 0.0;
  else if (!std::isfinite(lo))
    log_trunc_mass_ = log_normal_cdf(z(hi));
  else if (!std::isfinite(hi))
    log_trunc_mass_ = log_normal_cdf(-z(lo));
  else
    log_trunc_mass_ = log_normal_interval(z(lo), z(hi));
  if (log_trunc_mass_ == neg_inf)
    throw std::runtime_error("TruncNormal: truncation mass underflows");
}

double TruncNormal::log_density(double x) const {
  if (x < lo_ || x > hi_) return neg_inf;
  const double zz = z(x);
  return -0.5 * zz * zz - 0.5 * std::log(2.0 * M_PI * var_) - log_trunc_mass_;
}

double TruncNormal::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const double zlo = std::isfinite(lo_) ? z(lo_) : neg_inf;
  const double lnum = (zlo == neg_inf) ? log_normal_cdf(z(x))
                                       : log_normal_interval(zlo, z(x));
  return std::exp(lnum - log_trunc_mass_);
}

double TruncNormal::quantile(double phi) const {
  if (!(phi >= 0.0 && phi <= 1.0))
    throw std::invalid_argument("TruncNormal::quantile: phi outside [0,1]");
  if (phi == 0.0) return lo_;
  if (phi == 1.0) return hi_;
  const double zlo = std::isfinite(lo_) ? z(lo_) : neg_inf;
  const double zhi = std::isfinite(hi_) ? z(hi_) : pos_inf;
  double zq;
  if (zlo >= 0.0) {
    // both ends in the upper tail: interpolate survival probabilities
    const double qlo = normal_cdf(-zlo);
    const double qhi = (zhi == pos_inf) ? 0.0 : normal_cdf(-zhi);
    const double s = (1.0 - phi) * qlo + phi * qhi;
    if (s <= 0.0) throw std::runtime_error("TruncNormal::quantile: underflow");
    zq = -normal_quantile(s);
  } else if (zhi <= 0.0) {
    const double plo = (zlo == neg_inf) ? 0.0 : normal_cdf(zlo);
    const double phi_hi = normal_cdf(zhi);
    const double p = plo + phi * (phi_hi - plo);
    if (p <= 0.0) throw std::runtime_error("TruncNormal::quantile: underflow");
    zq = normal_quantile(p);
  } else {
    const double plo = (zlo == neg_inf) ? 0.0 : normal_cdf(zlo);
    const double phi_hi = (zhi == pos_inf) ? 1.0 : normal_cdf(zhi);
    zq = normal_quantile(plo + phi * (phi_hi - plo));
  }
  const double x = mean_ + sd_ * zq;
  return std::min(std::max(x, lo_), hi_);
}

double TruncNormal::region_log_probability(const Region& r) const {
  check_region(r, lo_, hi_);
  const double l = std::max(r.lo, lo_), h = std::min(r.hi, hi_);
  return log_normal_interval(z(l), z(h)) - log_trunc_mass_;
}

BaseDistribution::Tilted TruncNormal::tilted(const Region& r, double s) const {
  check_region(r, lo_, hi_);
  const double l = std::max(r.lo, lo_), h = std::min(r.hi, hi_);
  // e^{s x} N(mean, var) is an unnormalized N(mean + s var, var)
  const double m2 = mean_ + s * var_;
  Tilted t;
  t.component = std::make_shared<TruncNormal>(m2, var_, l, h);
  const double zl = (l - m2) / sd_, zh = (h - m2) / sd_;
  t.log_mass = s * mean_ + 0.5 * s * s * var_ +
               log_normal_interval(zl, zh) - log_trunc_mass_;
  return t;
}

double TruncNormal::truncated_mgf(const Region& r, double s) const {
  return std::exp(tilted(r, s).log_mass - region_log_probability(r));
}

}  // namespace vws

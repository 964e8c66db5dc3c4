// Per-region majorizers and minorizers of the weight function: constant
// bounds via optimization, log-linear tangent/chord bounds with
// L1-optimal expansion points.
#pragma once

#include <optional>

#include "vws/core.hpp"

namespace vws {

enum class BoundKind { Constant, LogLinear };
enum class Scheme { Constant, Linear };

// One region's bounds on log w: the majorizer line beta0 + beta1 x and
// the minorizer line (min_beta0 may be -inf, the trivial zero minorizer).
struct EnvelopePiece {
  Region region;
  BoundKind maj_kind = BoundKind::Constant;
  double maj_beta0 = 0.0;
  double maj_beta1 = 0.0;
  BoundKind min_kind = BoundKind::Constant;
  double min_beta0 = 0.0;
  double min_beta1 = 0.0;
  std::optional<double> expansion_point;

  double maj_line(double x) const { return maj_beta0 + maj_beta1 * x; }
  double min_line(double x) const { return min_beta0 + min_beta1 * x; }
};

// Constant bounds: sup / inf of log w over the region by numeric
// optimization with explicit endpoint checks.  An infimum diverging to
// -inf becomes the trivial zero minorizer; a supremum diverging to +inf
// is an error instructing tighter support truncation.
EnvelopePiece constant_bounds(const WeightedTarget& target, const Region& r);

// Closed-form constant bounds for the weight (1-x^2)^{(d-3)/2} e^{ks x}
// on a region inside (-1, 1).  ks = 0 gives the plain marginal weight.
EnvelopePiece vmf_constant_bounds_closed_form(int d, double kappa_shift,
                                              const Region& r);
// The sup/inf pair alone (hook form used by WeightedTarget).
std::pair<double, double> vmf_constant_log_bounds(int d, double kappa_shift,
                                                  const Region& r);

// Tangent line to log w at c: majorizer on log-concave regions, minorizer
// on log-convex ones.
std::pair<double, double> tangent_bound(const WeightedTarget& target,
                                        const Region& r, double c);

// Chord through the region endpoints: minorizer on log-concave regions,
// majorizer on log-convex ones.  Requires finite log w at both endpoints.
std::pair<double, double> chord_bound(const WeightedTarget& target,
                                      const Region& r);

// Expansion point minimizing (concave) or maximizing (convex) the
// L1-optimal criterion log w(c) - c grad(c) + log M_j(grad(c)).
// Flat objectives tie-break to the region midpoint.
double choose_expansion_point(const WeightedTarget& target, const Region& r);

// Assemble one piece under the given scheme.  A caller-provided expansion
// point overrides choose_expansion_point (used when two factorizations
// must share identical majorizers).
EnvelopePiece build_piece(const WeightedTarget& target, const Region& r,
                          Scheme scheme,
                          std::optional<double> expansion = std::nullopt);

}  // namespace vws

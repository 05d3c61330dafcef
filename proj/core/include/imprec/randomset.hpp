#pragma once

#include <cstdint>
#include <vector>

#include "imprec/intervals.hpp"

namespace imprec {

/// Lower probability that Theta <= theta under the vacuous-prior random-set
/// IM for the normal location model: the random interval around the data
/// point must land entirely below theta.
double vacuous_lower_cdf(double y, double theta);

/// Upper counterpart: the random interval must reach below theta.
double vacuous_upper_cdf(double y, double theta);

/// Finitely many nested focal intervals with masses summing to one.
/// Validation enforces nonempty intervals, positive masses, unit sum and the
/// chain ordering (every pair comparable under inclusion).
class IntervalPrior {
public:
  struct Focal {
    Interval set;
    double mass;
  };

  explicit IntervalPrior(std::vector<Focal> focal);
  static IntervalPrior vacuous() { return IntervalPrior({{Interval::whole(), 1.0}}); }

  const std::vector<Focal>& focal() const { return focal_; }
  bool is_vacuous() const;

  double upper_probability(const Interval& H) const;  // Pl(H)
  double lower_probability(const Interval& H) const;  // Bel(H)

private:
  std::vector<Focal> focal_;
};

struct McConfig {
  std::int64_t samples = 100000;
  std::uint64_t seed = 20240601;
};

/// The Dempster-combined continuous IM: the location-model random interval
/// [y - |U*|, y + |U*|] intersected with an independent draw from the prior
/// random set, conditioned on non-conflict.
struct CombinedIm {
  IntervalPrior prior;
  McConfig mc;
};

struct CdfBounds {
  double lower;
  double upper;
};

/// Closed-form lower/upper probabilities of {Theta <= theta} for the
/// combined IM, assembled from the normal CDF; exact up to CDF evaluation.
/// Works for any nested interval prior; reduces to the vacuous formulas when
/// the prior is vacuous. Throws when the non-conflict probability is zero.
CdfBounds combined_cdf_analytic(const IntervalPrior& prior, double y, double theta);

/// Non-conflict probability (the denominator of the combination rule).
double combined_denominator(const IntervalPrior& prior, double y);

struct McBounds {
  double lower;
  double upper;
  double lower_se;
  double upper_se;
  std::int64_t samples;
};

/// Monte Carlo estimate of the combined lower/upper probabilities of an
/// arbitrary finite union of intervals, with delta-method standard errors
/// for the two ratio estimators. Deterministic per (seed, n); the per-sample
/// counter streams make the result independent of evaluation order.
/// Throws when every sample conflicts ("complete conflict at this y").
McBounds combined_bounds_mc(const CombinedIm& im, double y, const IntervalUnion& H);

struct CredibleInterval {
  double lo;
  double hi;
};

/// Central credible interval from the analytic CDF bounds:
///   lo = inf{theta : upper_cdf >= (1-level)/2},
///   hi = inf{theta : lower_cdf >= 1-(1-level)/2},
/// each located by bisection to 1e-8.
CredibleInterval credible_interval(const IntervalPrior& prior, double y, double level);

/// Vacuous-prior special case.
CredibleInterval credible_interval_vacuous(double y, double level);

}  // namespace imprec

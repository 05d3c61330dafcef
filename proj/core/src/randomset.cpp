#include "imprec/randomset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imprec/normal.hpp"
#include "imprec/rng.hpp"

namespace imprec {

namespace {

/// CDF of |U*| for standard normal U*: G(v) = 2 Phi(v) - 1 on v >= 0.
double half_normal_cdf(double v) {
  if (v <= 0.0) return 0.0;
  return 2.0 * normal_cdf(v) - 1.0;
}

/// Smallest half-width at which [y-v, y+v] meets [a, b].
double meet_width(double y, const Interval& t) {
  double w = 0.0;
  w = std::max(w, y - t.hi);
  w = std::max(w, t.lo - y);
  return w;
}

}  // namespace

double vacuous_lower_cdf(double y, double theta) {
  if (theta < y) return 0.0;
  return half_normal_cdf(theta - y);
}

double vacuous_upper_cdf(double y, double theta) {
  if (theta >= y) return 1.0;
  return 1.0 - half_normal_cdf(y - theta);
}

IntervalPrior::IntervalPrior(std::vector<Focal> focal) : focal_(std::move(focal)) {
  if (focal_.empty()) throw std::invalid_argument("interval prior: no focal intervals");
  double total = 0.0;
  for (const auto& f : focal_) {
    if (!f.set.valid()) throw std::invalid_argument("interval prior: empty focal interval");
    if (!(f.mass > 0.0)) throw std::invalid_argument("interval prior: nonpositive mass");
    total += f.mass;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("interval prior: masses do not sum to 1");
  // canonical order: increasing under inclusion (innermost first)
  std::sort(focal_.begin(), focal_.end(), [](const Focal& a, const Focal& b) {
    if (a.set.lo != b.set.lo) return a.set.lo > b.set.lo;
    return a.set.hi < b.set.hi;
  });
  for (std::size_t i = 1; i < focal_.size(); ++i) {
    const Interval& inner = focal_[i - 1].set;
    const Interval& outer = focal_[i].set;
    if (!(outer.lo <= inner.lo && inner.hi <= outer.hi))
      throw std::invalid_argument("interval prior: focal intervals are not nested");
  }
}

bool IntervalPrior::is_vacuous() const {
  return focal_.size() == 1 && focal_[0].set.lo == kNegInf && focal_[0].set.hi == kPosInf;
}

double IntervalPrior::upper_probability(const Interval& H) const {
  double acc = 0.0;
  for (const auto& f : focal_)
    if (intersect(f.set, H)) acc += f.mass;
  return acc;
}

double IntervalPrior::lower_probability(const Interval& H) const {
  double acc = 0.0;
  for (const auto& f : focal_)
    if (H.lo <= f.set.lo && f.set.hi <= H.hi) acc += f.mass;
  return acc;
}

double combined_denominator(const IntervalPrior& prior, double y) {
  double d = 0.0;
  for (const auto& f : prior.focal())
    d += f.mass * (1.0 - half_normal_cdf(meet_width(y, f.set)));
  return d;
}

CdfBounds combined_cdf_analytic(const IntervalPrior& prior, double y, double theta) {
  double denom = combined_denominator(prior, y);
  if (!(denom > 0.0))
    throw std::runtime_error("combined_cdf_analytic: complete conflict at this y");

  double num_lower = 0.0;
  double num_upper = 0.0;
  for (const auto& f : prior.focal()) {
    const Interval& t = f.set;
    double w0 = meet_width(y, t);
    // lower: nonempty intersection with upper endpoint min(y+V, t.hi) <= theta
    if (t.hi <= theta) {
      num_lower += f.mass * (1.0 - half_normal_cdf(w0));
    } else if (theta - y >= w0) {
      num_lower += f.mass * (half_normal_cdf(theta - y) - half_normal_cdf(w0));
    }
    // upper: intersection with t cut at theta still nonempty
    double cut_hi = std::min(t.hi, theta);
    if (cut_hi >= t.lo) {
      Interval cut{t.lo, cut_hi};
      num_upper += f.mass * (1.0 - half_normal_cdf(meet_width(y, cut)));
    }
  }
  return {num_lower / denom, num_upper / denom};
}

McBounds combined_bounds_mc(const CombinedIm& im, double y, const IntervalUnion& H) {
  const std::int64_t n = im.mc.samples;
  if (n < 1) throw std::invalid_argument("combined_bounds_mc: sample count must be >= 1");
  CounterRng rng(im.mc.seed);

  std::vector<double> cum;
  cum.reserve(im.prior.focal().size());
  double running = 0.0;
  for (const auto& f : im.prior.focal()) {
    running += f.mass;
    cum.push_back(running);
  }

  std::int64_t n_nonconflict = 0, n_lower = 0, n_upper = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    double v = std::fabs(rng.normal(0, static_cast<std::uint64_t>(i)));
    std::size_t k = rng.categorical(1, static_cast<std::uint64_t>(i), cum);
    auto cap = intersect({y - v, y + v}, im.prior.focal()[k].set);
    if (!cap) continue;
    ++n_nonconflict;
    if (!H.empty() && H.covers(*cap)) ++n_lower;
    if (H.intersects(*cap)) ++n_upper;
  }
  if (n_nonconflict == 0)
    throw std::runtime_error("combined_bounds_mc: complete conflict at this y");

  auto ratio_se = [&](std::int64_t num_count) {
    // The numerator event is contained in the denominator event, so given D
    // non-conflicting samples the numerator count is Binomial(D, r) and the
    // delta-method variance collapses to r(1-r)/D. The half-count continuity
    // correction keeps the estimate informative when every sample agrees.
    double d = static_cast<double>(n_nonconflict);
    double r = (static_cast<double>(num_count) + 0.5) / (d + 1.0);
    return std::sqrt(r * (1.0 - r) / d);
  };

  return {static_cast<double>(n_lower) / static_cast<double>(n_nonconflict),
          static_cast<double>(n_upper) / static_cast<double>(n_nonconflict),
          ratio_se(n_lower), ratio_se(n_upper), n};
}

CredibleInterval credible_interval(const IntervalPrior& prior, double y, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("credible_interval: level must lie in (0,1)");
  const double p_lo = (1.0 - level) / 2.0;
  const double p_hi = 1.0 - p_lo;

  // bracket: the vacuous curves bound how far the quantiles can sit, and the
  // prior endpoints can only pull them toward finite focal boundaries
  double span = 10.0 + std::fabs(normal_quantile(p_lo / 4.0));
  double lo_a = y - span, hi_b = y + span;
  for (const auto& f : prior.focal()) {
    if (std::isfinite(f.set.lo)) lo_a = std::min(lo_a, f.set.lo - span);
    if (std::isfinite(f.set.hi)) hi_b = std::max(hi_b, f.set.hi + span);
  }

  double lo = invert_nondecreasing(
      [&](double t) { return combined_cdf_analytic(prior, y, t).upper; }, p_lo, lo_a,
      hi_b, 1e-8);
  double hi = invert_nondecreasing(
      [&](double t) { return combined_cdf_analytic(prior, y, t).lower; }, p_hi, lo_a,
      hi_b, 1e-8);
  if (lo > hi) throw std::logic_error("credible_interval: crossed endpoints");
  return {lo, hi};
}

CredibleInterval credible_interval_vacuous(double y, double level) {
  return credible_interval(IntervalPrior::vacuous(), y, level);
}

}  // namespace imprec

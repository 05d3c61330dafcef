#pragma once

namespace imprec {

/// Standard normal CDF. Single source of normal-CDF truth for the whole
/// library (engines, analytic curves, interval inversion). Evaluated through
/// a rational Chebyshev approximation of erf/erfc (Cody's coefficients);
/// absolute error is below 1e-14, comfortably inside the 1e-10 contract that
/// the tests enforce against an independent series evaluation.
double normal_cdf(double x);

/// erf and erfc on the same approximation, exposed for the tests.
double erf_approx(double x);
double erfc_approx(double x);

/// Standard normal quantile (inverse CDF), Wichura's PPND16 rational
/// approximation. Used by the counter-based sampler; relative error ~1e-15.
double normal_quantile(double p);

/// Smallest x in [lo, hi] with f(x) >= target, for nondecreasing f, located
/// by bisection to within xtol. Jump discontinuities resolve to the jump
/// point. Requires f(hi) >= target.
template <class F>
double invert_nondecreasing(F&& f, double target, double lo, double hi, double xtol) {
  while (hi - lo > xtol) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) >= target) hi = mid;
    else lo = mid;
  }
  return hi;
}

}  // namespace imprec

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "imprec/credal.hpp"
#include "imprec/im_table.hpp"
#include "imprec/likelihood.hpp"
#include "imprec/mass.hpp"
#include "imprec/randomset.hpp"
#include "imprec/rational.hpp"

// Independent oracles and generators used by the unit and acceptance suites.
// Everything here deliberately avoids the library's own computational paths:
// the erf oracle is a series evaluation, the Monte Carlo oracle runs on the
// standard-library RNG, and the combination oracle is a plain double sum.
namespace testsup {

/// erf via Taylor series (small |x|) and a Lentz continued fraction for
/// erfc (large |x|), in long double.
double oracle_erf(double x);
double oracle_normal_cdf(double x);

/// Brute-force double sum over focal pairs, no intermediate structure.
/// Returns accumulated masses per intersection (unnormalised) and writes the
/// empty-set mass to conflict_out.
template <class S>
std::map<std::uint64_t, S> brute_dempster(const imprec::BasicMassFunction<S>& m1,
                                          const imprec::BasicMassFunction<S>& m2,
                                          S* conflict_out) {
  std::map<std::uint64_t, S> acc;
  S conflict = S(0);
  for (const auto& [a, ma] : m1.entries())
    for (const auto& [b, mb] : m2.entries()) {
      std::uint64_t c = a & b;
      if (c == 0) {
        conflict += ma * mb;
      } else {
        auto it = acc.find(c);
        if (it == acc.end()) acc.emplace(c, ma * mb);
        else it->second = it->second + ma * mb;
      }
    }
  *conflict_out = conflict;
  return acc;
}

imprec::Frame numbered_frame(const char* prefix, std::size_t n);

/// Likelihood with strictly positive random rows that sum to one within
/// double rounding.
imprec::Likelihood random_likelihood(std::mt19937_64& rng, std::size_t ny, std::size_t nt);

imprec::MassFunction random_mass(std::mt19937_64& rng, const imprec::Frame& frame,
                                 std::size_t max_focals);

/// Random small credal model: frames of size 2..max_n, at most max_focals
/// prior focal sets.
imprec::CredalModel random_model(std::mt19937_64& rng, std::size_t max_n = 4,
                                 std::size_t max_focals = 3);

/// IM whose rows are random belief functions (monotone, conjugacy-consistent
/// by construction).
imprec::IMTable random_belief_table(std::mt19937_64& rng, const imprec::Frame& data,
                                    const imprec::Frame& param,
                                    std::size_t max_focals = 3);

struct McCdf {
  double lower;
  double upper;
  double se;  // larger of the two ratio standard errors
};

/// Monte Carlo estimate of the combined lower/upper CDF at (y, theta) on the
/// standard-library RNG; independent of the production sampler and CDF code.
McCdf mc_combined_cdf(const imprec::IntervalPrior& prior, double y, double theta,
                      std::int64_t n, std::uint64_t seed);

/// Precise-prior Bayes posterior, directly from the definition.
std::vector<double> bayes_posterior(const imprec::Likelihood& lik,
                                    const std::vector<double>& prior, std::size_t y);

/// Evaluates the validity display at an arbitrary alpha with the strict
/// event, returning the joint upper probability (used by the
/// grid-refinement invariant).
double validity_value_at(const imprec::CredalModel& model, const imprec::IMTable& im,
                         std::uint64_t H, double alpha);

}  // namespace testsup

#pragma once

#include <cstddef>
#include <vector>

#include "imprec/im_table.hpp"
#include "imprec/likelihood.hpp"

namespace imprec {

/// One extreme-point candidate of the prior credal set: every focal set's
/// mass allocated to a single member. The induced probability vector always
/// dominates the prior belief function, and the set of all allocations
/// contains every extreme point of the credal polytope, so minimising a
/// linear or linear-fractional objective over allocations is exact.
struct PriorVertex {
  std::vector<std::size_t> allocation;  // chosen member index per focal set
  std::vector<double> probs;            // induced distribution over the frame
};

/// Enumerates all focal-mass allocations (product of focal cardinalities).
/// Throws std::length_error when the count exceeds `cap`, advising a coarser
/// prior.
std::vector<PriorVertex> prior_vertices(const MassFunction& prior,
                                        std::size_t cap = 1000000);

/// Number of allocations without materialising them.
std::size_t prior_vertex_count(const MassFunction& prior);

/// Lower prevision of a joint gamble under the model: Choquet integral of
/// theta -> E_{Y|theta} f(Y, theta) against the prior belief function. With a
/// vacuous prior this is inf_theta E_{Y|theta} f.
double joint_lower_prevision(const CredalModel& model, const JointGamble& f);

/// Conjugate upper prevision, computed directly as the Choquet max-sum.
double joint_upper_prevision(const CredalModel& model, const JointGamble& f);

/// Data-conditional lower prevision by the generalized Bayes rule. If the
/// joint lower probability of the y-slice is zero the vacuous branch returns
/// inf_theta f_y; otherwise the minimum over prior vertices of the Bayes
/// posterior expectation (vertices with zero marginal are skipped).
double generalized_bayes_lower(const CredalModel& model, std::size_t y, const Gamble& f_y);

/// Conjugate: -generalized_bayes_lower(model, y, -f_y).
double generalized_bayes_upper(const CredalModel& model, std::size_t y, const Gamble& f_y);

/// Tabulates the generalized Bayes IM over every subset of the parameter
/// frame. Subset enumeration is 2^|param|; frames beyond `max_param_bits`
/// are rejected.
IMTable generalized_bayes_im(const CredalModel& model, std::size_t max_param_bits = 16);

}  // namespace imprec

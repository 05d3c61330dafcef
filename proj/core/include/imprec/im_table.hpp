#pragma once

#include <cstdint>
#include <vector>

#include "imprec/frame.hpp"
#include "imprec/likelihood.hpp"
#include "imprec/mass.hpp"

namespace imprec {

/// A finite inferential model: for every data point y, the lower probability
/// of every hypothesis H over the parameter frame. Uppers come from
/// conjugacy. Construction enforces, per y: lower(empty)=0, lower(full)=1,
/// monotonicity in H, and lower(H) + lower(~H) <= 1 so that lower <= upper.
class IMTable {
public:
  IMTable(Frame data_frame, Frame param_frame,
          std::vector<std::vector<double>> lower);

  const Frame& data_frame() const { return data_; }
  const Frame& param_frame() const { return param_; }
  std::size_t data_size() const { return data_.size(); }
  std::size_t param_size() const { return param_.size(); }
  std::uint64_t full_mask() const { return param_.full_mask(); }

  double lower(std::size_t y, std::uint64_t H) const { return lower_[y][H]; }
  double upper(std::size_t y, std::uint64_t H) const {
    return 1.0 - lower_[y][full_mask() & ~H];
  }

  const std::vector<std::vector<double>>& rows() const { return lower_; }

private:
  Frame data_;
  Frame param_;
  std::vector<std::vector<double>> lower_;
};

/// The vacuous IM: lower 0 on every proper subset, 1 on the full frame.
IMTable vacuous_table(const Frame& data_frame, const Frame& param_frame);

/// Precise Bayes-posterior IM for a precise prior: lower(H) = posterior
/// probability of H given y. Requires every data point to have positive
/// marginal probability.
IMTable bayes_table(const Likelihood& likelihood, const std::vector<double>& prior_probs);

/// IM whose row for each y is the belief function of the given mass
/// function (used for random-set style constructions on finite frames).
IMTable belief_table(const Frame& data_frame, const std::vector<MassFunction>& per_y);

}  // namespace imprec

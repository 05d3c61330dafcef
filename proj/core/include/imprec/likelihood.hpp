#pragma once

#include <vector>

#include "imprec/frame.hpp"
#include "imprec/mass.hpp"

namespace imprec {

/// Precise sampling model P(Y | theta) on finite frames. Stored row-major:
/// one row per parameter value, each row a probability distribution over the
/// data frame (rows sum to 1 within 1e-12).
class Likelihood {
public:
  Likelihood(Frame data_frame, Frame param_frame, std::vector<double> table);

  const Frame& data_frame() const { return data_; }
  const Frame& param_frame() const { return param_; }

  /// P(y | theta)
  double at(std::size_t y, std::size_t theta) const {
    return table_[theta * data_.size() + y];
  }

  const std::vector<double>& table() const { return table_; }

private:
  Frame data_;
  Frame param_;
  std::vector<double> table_;
};

/// Joint model: precise likelihood plus a belief-function prior on the
/// parameter frame. Its credal set is the set of products q x P(Y|theta)
/// over priors q dominating the prior belief function.
struct CredalModel {
  Likelihood likelihood;
  MassFunction prior;

  CredalModel(Likelihood lik, MassFunction pr);

  std::size_t data_size() const { return likelihood.data_frame().size(); }
  std::size_t param_size() const { return likelihood.param_frame().size(); }
};

/// Payoff over the product space, one value per (y, theta) pair.
class JointGamble {
public:
  JointGamble(std::size_t data_size, std::size_t param_size, std::vector<double> values);

  static JointGamble zero(std::size_t data_size, std::size_t param_size) {
    return JointGamble(data_size, param_size,
                       std::vector<double>(data_size * param_size, 0.0));
  }

  std::size_t data_size() const { return ny_; }
  std::size_t param_size() const { return nt_; }

  double at(std::size_t y, std::size_t theta) const { return values_[y * nt_ + theta]; }
  void set(std::size_t y, std::size_t theta, double v) { values_[y * nt_ + theta] = v; }

  JointGamble negate() const;

private:
  std::size_t ny_;
  std::size_t nt_;
  std::vector<double> values_;
};

}  // namespace imprec

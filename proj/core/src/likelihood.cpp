#include "imprec/likelihood.hpp"

#include <cmath>

namespace imprec {

Likelihood::Likelihood(Frame data_frame, Frame param_frame, std::vector<double> table)
    : data_(std::move(data_frame)), param_(std::move(param_frame)), table_(std::move(table)) {
  if (table_.size() != data_.size() * param_.size())
    throw std::invalid_argument("likelihood: table size must be |data| x |param|");
  for (double v : table_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("likelihood: entries must be finite and nonnegative");
  for (std::size_t t = 0; t < param_.size(); ++t) {
    double s = 0.0;
    for (std::size_t y = 0; y < data_.size(); ++y) s += at(y, t);
    if (std::fabs(s - 1.0) > 1e-12)
      throw std::invalid_argument("likelihood: row for parameter '" + param_.label(t) +
                                  "' does not sum to 1");
  }
}

CredalModel::CredalModel(Likelihood lik, MassFunction pr)
    : likelihood(std::move(lik)), prior(std::move(pr)) {
  require_same_frame(likelihood.param_frame(), prior.frame(), "credal model prior");
}

JointGamble::JointGamble(std::size_t data_size, std::size_t param_size,
                         std::vector<double> values)
    : ny_(data_size), nt_(param_size), values_(std::move(values)) {
  if (values_.size() != ny_ * nt_)
    throw std::invalid_argument("joint gamble: value count must be |data| x |param|");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("joint gamble: non-finite value");
}

JointGamble JointGamble::negate() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return JointGamble(ny_, nt_, std::move(v));
}

}  // namespace imprec

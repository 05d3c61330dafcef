#include "imprec/im_table.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace imprec {

namespace {
constexpr double kTableTol = 1e-12;
}

IMTable::IMTable(Frame data_frame, Frame param_frame,
                 std::vector<std::vector<double>> lower)
    : data_(std::move(data_frame)), param_(std::move(param_frame)), lower_(std::move(lower)) {
  if (param_.size() > 24)
    throw std::invalid_argument("im table: parameter frame too large to enumerate subsets");
  const std::size_t n_sub = std::size_t{1} << param_.size();
  if (lower_.size() != data_.size())
    throw std::invalid_argument("im table: one row per data point required");
  const std::uint64_t full = param_.full_mask();
  for (std::size_t y = 0; y < lower_.size(); ++y) {
    auto& row = lower_[y];
    if (row.size() != n_sub)
      throw std::invalid_argument("im table: row must cover every subset");
    if (std::fabs(row[0]) > kTableTol)
      throw std::invalid_argument("im table: lower(empty) must be 0");
    if (std::fabs(row[full] - 1.0) > kTableTol)
      throw std::invalid_argument("im table: lower(full frame) must be 1");
    row[0] = 0.0;
    row[full] = 1.0;
    for (std::uint64_t H = 0; H < n_sub; ++H) {
      if (row[H] < -kTableTol || row[H] > 1.0 + kTableTol)
        throw std::invalid_argument("im table: lower probability outside [0,1]");
      if (row[H] + row[full & ~H] > 1.0 + kTableTol)
        throw std::invalid_argument("im table: lower exceeds conjugate upper");
      for (std::size_t t = 0; t < param_.size(); ++t) {
        std::uint64_t bigger = H | (std::uint64_t{1} << t);
        if (bigger != H && row[H] > row[bigger] + kTableTol)
          throw std::invalid_argument("im table: lower probabilities not monotone in H");
      }
    }
  }
}

IMTable vacuous_table(const Frame& data_frame, const Frame& param_frame) {
  const std::size_t n_sub = std::size_t{1} << param_frame.size();
  std::vector<std::vector<double>> rows(
      data_frame.size(), std::vector<double>(n_sub, 0.0));
  for (auto& row : rows) row[param_frame.full_mask()] = 1.0;
  return IMTable(data_frame, param_frame, std::move(rows));
}

IMTable bayes_table(const Likelihood& likelihood, const std::vector<double>& prior_probs) {
  const Frame& dframe = likelihood.data_frame();
  const Frame& pframe = likelihood.param_frame();
  const std::size_t nt = pframe.size();
  if (prior_probs.size() != nt)
    throw std::invalid_argument("bayes_table: prior length must match parameter frame");
  double psum = 0.0;
  for (double p : prior_probs) {
    if (p < 0.0) throw std::invalid_argument("bayes_table: negative prior probability");
    psum += p;
  }
  if (std::fabs(psum - 1.0) > 1e-12)
    throw std::invalid_argument("bayes_table: prior does not sum to 1");

  const std::size_t n_sub = std::size_t{1} << nt;
  std::vector<std::vector<double>> rows;
  rows.reserve(dframe.size());
  for (std::size_t y = 0; y < dframe.size(); ++y) {
    double marg = 0.0;
    for (std::size_t t = 0; t < nt; ++t) marg += prior_probs[t] * likelihood.at(y, t);
    if (marg <= 0.0)
      throw std::invalid_argument("bayes_table: data point '" + dframe.label(y) +
                                  "' has zero marginal probability");
    std::vector<double> post(nt);
    for (std::size_t t = 0; t < nt; ++t) post[t] = prior_probs[t] * likelihood.at(y, t) / marg;
    // subset sums via the shared lowest-bit recursion
    std::vector<double> row(n_sub, 0.0);
    for (std::uint64_t H = 1; H < n_sub; ++H) {
      std::uint64_t low = H & (~H + 1);
      row[H] = row[H ^ low] + post[static_cast<std::size_t>(__builtin_ctzll(low))];
    }
    row[pframe.full_mask()] = 1.0;
    rows.push_back(std::move(row));
  }
  return IMTable(dframe, pframe, std::move(rows));
}

IMTable belief_table(const Frame& data_frame, const std::vector<MassFunction>& per_y) {
  if (per_y.empty()) throw std::invalid_argument("belief_table: no rows");
  if (per_y.size() != data_frame.size())
    throw std::invalid_argument("belief_table: one mass function per data point required");
  const Frame& pframe = per_y.front().frame();
  const std::size_t n_sub = std::size_t{1} << pframe.size();
  std::vector<std::vector<double>> rows;
  rows.reserve(per_y.size());
  for (const auto& m : per_y) {
    require_same_frame(pframe, m.frame(), "belief_table");
    std::vector<double> row(n_sub, 0.0);
    for (std::uint64_t H = 0; H < n_sub; ++H) row[H] = m.belief(H);
    row[pframe.full_mask()] = 1.0;
    rows.push_back(std::move(row));
  }
  return IMTable(data_frame, pframe, std::move(rows));
}

}  // namespace imprec

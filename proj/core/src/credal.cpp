#include "imprec/credal.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace imprec {

std::size_t prior_vertex_count(const MassFunction& prior) {
  std::size_t count = 1;
  for (const auto& [mask, m] : prior.entries()) {
    (void)m;
    std::size_t card = static_cast<std::size_t>(std::popcount(mask));
    if (count > (std::numeric_limits<std::size_t>::max() / card))
      return std::numeric_limits<std::size_t>::max();
    count *= card;
  }
  return count;
}

std::vector<PriorVertex> prior_vertices(const MassFunction& prior, std::size_t cap) {
  const std::size_t total = prior_vertex_count(prior);
  if (total > cap)
    throw std::length_error(
        "prior_vertices: allocation count " + std::to_string(total) +
        " exceeds cap " + std::to_string(cap) + "; use a coarser prior");

  const auto& entries = prior.entries();
  std::vector<std::vector<std::size_t>> members(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k)
    for_each_member(entries[k].first,
                    [&](std::size_t i) { members[k].push_back(i); });

  const std::size_t n = prior.frame().size();
  std::vector<PriorVertex> out;
  out.reserve(total);
  std::vector<std::size_t> pick(entries.size(), 0);
  for (;;) {
    PriorVertex v;
    v.allocation.resize(entries.size());
    v.probs.assign(n, 0.0);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      std::size_t elem = members[k][pick[k]];
      v.allocation[k] = elem;
      v.probs[elem] += entries[k].second;
    }
    out.push_back(std::move(v));
    std::size_t k = 0;
    while (k < pick.size()) {
      if (++pick[k] < members[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == pick.size()) break;
  }
  return out;
}

double joint_lower_prevision(const CredalModel& model, const JointGamble& f) {
  if (f.data_size() != model.data_size() || f.param_size() != model.param_size())
    throw std::invalid_argument("joint_lower_prevision: gamble dimensions mismatch");
  const std::size_t ny = model.data_size();
  const std::size_t nt = model.param_size();
  std::vector<double> g(nt, 0.0);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t y = 0; y < ny; ++y) g[t] += model.likelihood.at(y, t) * f.at(y, t);
  double acc = 0.0;
  for (const auto& [mask, m] : model.prior.entries()) {
    double lo = std::numeric_limits<double>::infinity();
    for_each_member(mask, [&](std::size_t t) { lo = std::min(lo, g[t]); });
    acc += m * lo;
  }
  return acc;
}

double joint_upper_prevision(const CredalModel& model, const JointGamble& f) {
  if (f.data_size() != model.data_size() || f.param_size() != model.param_size())
    throw std::invalid_argument("joint_upper_prevision: gamble dimensions mismatch");
  const std::size_t ny = model.data_size();
  const std::size_t nt = model.param_size();
  std::vector<double> g(nt, 0.0);
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t y = 0; y < ny; ++y) g[t] += model.likelihood.at(y, t) * f.at(y, t);
  double acc = 0.0;
  for (const auto& [mask, m] : model.prior.entries()) {
    double hi = -std::numeric_limits<double>::infinity();
    for_each_member(mask, [&](std::size_t t) { hi = std::max(hi, g[t]); });
    acc += m * hi;
  }
  return acc;
}

namespace {

/// Joint lower probability of the y-slice: sum_T m(T) min_{theta in T} L(y|theta).
double slice_lower_probability(const CredalModel& model, std::size_t y) {
  double acc = 0.0;
  for (const auto& [mask, m] : model.prior.entries()) {
    double lo = std::numeric_limits<double>::infinity();
    for_each_member(mask, [&](std::size_t t) { lo = std::min(lo, model.likelihood.at(y, t)); });
    acc += m * lo;
  }
  return acc;
}

}  // namespace

double generalized_bayes_lower(const CredalModel& model, std::size_t y, const Gamble& f_y) {
  require_same_frame(model.likelihood.param_frame(), f_y.frame(), "generalized_bayes_lower");
  if (y >= model.data_size())
    throw std::invalid_argument("generalized_bayes_lower: data index out of range");
  const std::size_t nt = model.param_size();

  if (slice_lower_probability(model, y) <= 0.0) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < nt; ++t) lo = std::min(lo, f_y[t]);
    return lo;
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : prior_vertices(model.prior)) {
    double den = 0.0, num = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      double w = v.probs[t] * model.likelihood.at(y, t);
      den += w;
      num += w * f_y[t];
    }
    if (den <= 0.0) continue;  // cannot happen when the slice lower is positive
    best = std::min(best, num / den);
  }
  return best;
}

double generalized_bayes_upper(const CredalModel& model, std::size_t y, const Gamble& f_y) {
  return -generalized_bayes_lower(model, y, f_y.negate());
}

IMTable generalized_bayes_im(const CredalModel& model, std::size_t max_param_bits) {
  const std::size_t nt = model.param_size();
  if (nt > max_param_bits)
    throw std::length_error("generalized_bayes_im: parameter frame exceeds subset cap");
  const std::size_t ny = model.data_size();
  const std::size_t n_sub = std::size_t{1} << nt;
  const std::uint64_t full = model.likelihood.param_frame().full_mask();

  const auto vertices = prior_vertices(model.prior);
  std::vector<std::vector<double>> rows(ny, std::vector<double>(n_sub, 0.0));
  std::vector<double> sums(n_sub, 0.0);
  for (std::size_t y = 0; y < ny; ++y) {
    auto& row = rows[y];
    if (slice_lower_probability(model, y) <= 0.0) {
      row[full] = 1.0;  // vacuous branch: indicators of proper subsets get 0
      continue;
    }
    row.assign(n_sub, std::numeric_limits<double>::infinity());
    for (const auto& v : vertices) {
      double den = 0.0;
      for (std::size_t t = 0; t < nt; ++t) den += v.probs[t] * model.likelihood.at(y, t);
      if (den <= 0.0) continue;
      sums[0] = 0.0;
      for (std::uint64_t H = 1; H < n_sub; ++H) {
        std::uint64_t low = H & (~H + 1);
        std::size_t t = static_cast<std::size_t>(__builtin_ctzll(low));
        sums[H] = sums[H ^ low] + v.probs[t] * model.likelihood.at(y, t);
      }
      for (std::uint64_t H = 0; H < n_sub; ++H)
        row[H] = std::min(row[H], sums[H] / den);
    }
    row[0] = 0.0;
    row[full] = 1.0;
  }
  return IMTable(model.likelihood.data_frame(), model.likelihood.param_frame(),
                 std::move(rows));
}

}  // namespace imprec

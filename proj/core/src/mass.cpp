#include "imprec/mass.hpp"

#include <cmath>
#include <limits>

namespace imprec {

double belief(const MassFunction& m, const Subset& H) {
  require_same_frame(m.frame(), H.frame(), "belief");
  return m.belief(H.mask());
}

double plausibility(const MassFunction& m, const Subset& H) {
  require_same_frame(m.frame(), H.frame(), "plausibility");
  return m.plausibility(H.mask());
}

double lower_prevision(const MassFunction& m, const Gamble& f) {
  require_same_frame(m.frame(), f.frame(), "lower_prevision");
  double acc = 0.0;
  for (const auto& [mask, w] : m.entries()) {
    double lo = std::numeric_limits<double>::infinity();
    for_each_member(mask, [&](std::size_t i) { lo = std::min(lo, f[i]); });
    acc += w * lo;
  }
  return acc;
}

double upper_prevision(const MassFunction& m, const Gamble& f) {
  require_same_frame(m.frame(), f.frame(), "upper_prevision");
  double acc = 0.0;
  for (const auto& [mask, w] : m.entries()) {
    double hi = -std::numeric_limits<double>::infinity();
    for_each_member(mask, [&](std::size_t i) { hi = std::max(hi, f[i]); });
    acc += w * hi;
  }
  return acc;
}

bool is_nested(const MassFunction& m) { return m.is_nested(); }

Rational lower_prevision(const RationalMassFunction& m, const std::vector<Rational>& f) {
  if (f.size() != m.frame().size())
    throw std::invalid_argument("lower_prevision: payoff size mismatch");
  Rational acc(0);
  for (const auto& [mask, w] : m.entries()) {
    bool first = true;
    Rational lo(0);
    for_each_member(mask, [&](std::size_t i) {
      if (first || f[i] < lo) lo = f[i];
      first = false;
    });
    acc += w * lo;
  }
  return acc;
}

Rational upper_prevision(const RationalMassFunction& m, const std::vector<Rational>& f) {
  if (f.size() != m.frame().size())
    throw std::invalid_argument("upper_prevision: payoff size mismatch");
  Rational acc(0);
  for (const auto& [mask, w] : m.entries()) {
    bool first = true;
    Rational hi(0);
    for_each_member(mask, [&](std::size_t i) {
      if (first || hi < f[i]) hi = f[i];
      first = false;
    });
    acc += w * hi;
  }
  return acc;
}

}  // namespace imprec

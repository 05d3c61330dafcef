#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

namespace imprec {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Closed interval on the extended real line; lo <= hi, endpoints may be
/// infinite. Degenerate single points are allowed.
struct Interval {
  double lo;
  double hi;

  static Interval whole() { return {kNegInf, kPosInf}; }
  static Interval at_most(double c) { return {kNegInf, c}; }
  static Interval at_least(double c) { return {c, kPosInf}; }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool valid() const { return lo <= hi; }
};

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (!r.valid()) return std::nullopt;
  return r;
}

/// Finite union of intervals, normalised to sorted pairwise-disjoint
/// components on construction (overlapping or touching inputs merge).
class IntervalUnion {
public:
  IntervalUnion() = default;

  explicit IntervalUnion(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const Interval& iv : parts) {
      if (!iv.valid()) continue;
      if (!parts_.empty() && iv.lo <= parts_.back().hi)
        parts_.back().hi = std::max(parts_.back().hi, iv.hi);
      else
        parts_.push_back(iv);
    }
  }

  static IntervalUnion whole() { return IntervalUnion({Interval::whole()}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  /// Is the (nonempty) interval contained in the union? Components are
  /// disjoint and closed, so containment means one component swallows it.
  bool covers(const Interval& iv) const {
    for (const Interval& p : parts_)
      if (p.lo <= iv.lo && iv.hi <= p.hi) return true;
    return false;
  }

  bool intersects(const Interval& iv) const {
    for (const Interval& p : parts_)
      if (std::max(p.lo, iv.lo) <= std::min(p.hi, iv.hi)) return true;
    return false;
  }

private:
  std::vector<Interval> parts_;
};

}  // namespace imprec

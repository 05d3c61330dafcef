#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "imprec/frame.hpp"
#include "imprec/rational.hpp"

namespace imprec {

namespace detail {

template <class S>
struct mass_traits;

template <>
struct mass_traits<double> {
  static constexpr double zero() { return 0.0; }
  static constexpr double one() { return 1.0; }
  // Mass sums must hit 1 within this tolerance; silent renormalisation hides
  // modelling bugs, so anything worse is rejected.
  static bool unit_sum(double s) { return s > 1.0 - 1e-12 && s < 1.0 + 1e-12; }
  static bool positive(double x) { return x > 0.0; }
};

template <>
struct mass_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool unit_sum(const Rational& s) { return s == Rational(1); }
  static bool positive(const Rational& x) { return x > Rational(0); }
};

}  // namespace detail

/// Finitely supported basic probability assignment over subsets of a finite
/// frame. Focal elements are stored once each (sorted by mask) with strictly
/// positive masses summing to one. S is double in production and Rational in
/// the exact test mode.
template <class S>
class BasicMassFunction {
public:
  using Entry = std::pair<std::uint64_t, S>;

  BasicMassFunction(Frame frame, std::vector<Entry> entries)
      : frame_(std::move(frame)), entries_(std::move(entries)) {
    canonicalize();
    S total = detail::mass_traits<S>::zero();
    for (const auto& [mask, m] : entries_) total += m;
    if (!detail::mass_traits<S>::unit_sum(total))
      throw std::invalid_argument("mass function: masses do not sum to 1");
  }

  /// Rescales the given masses to unit sum. This is the only renormalising
  /// entry point; the constructor rejects non-unit input.
  static BasicMassFunction normalized(Frame frame, std::vector<Entry> entries) {
    S total = detail::mass_traits<S>::zero();
    for (const auto& [mask, m] : entries) total += m;
    if (!detail::mass_traits<S>::positive(total))
      throw std::invalid_argument("mass function: nonpositive total mass");
    for (auto& [mask, m] : entries) m = m / total;
    return BasicMassFunction(std::move(frame), std::move(entries));
  }

  static BasicMassFunction vacuous(const Frame& frame) {
    return BasicMassFunction(frame, {{frame.full_mask(), detail::mass_traits<S>::one()}});
  }

  const Frame& frame() const { return frame_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t focal_count() const { return entries_.size(); }

  /// Bel(H) = sum of masses of focal sets contained in H.
  S belief(std::uint64_t H) const {
    S acc = detail::mass_traits<S>::zero();
    for (const auto& [mask, m] : entries_)
      if ((mask & ~H) == 0) acc += m;
    return acc;
  }

  /// Pl(H) = sum of masses of focal sets meeting H.
  S plausibility(std::uint64_t H) const {
    S acc = detail::mass_traits<S>::zero();
    for (const auto& [mask, m] : entries_)
      if (mask & H) acc += m;
    return acc;
  }

  /// True iff the focal sets form a chain under inclusion.
  bool is_nested() const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      for (std::size_t j = i + 1; j < entries_.size(); ++j) {
        std::uint64_t a = entries_[i].first, b = entries_[j].first;
        if ((a & ~b) != 0 && (b & ~a) != 0) return false;
      }
    return true;
  }

private:
  void canonicalize() {
    if (entries_.empty())
      throw std::invalid_argument("mass function: no focal elements");
    for (const auto& [mask, m] : entries_) {
      if (mask == 0)
        throw std::invalid_argument("mass function: empty focal set");
      if ((mask & ~frame_.full_mask()) != 0)
        throw std::invalid_argument("mass function: focal set outside frame");
      if (!detail::mass_traits<S>::positive(m))
        throw std::invalid_argument("mass function: nonpositive mass");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (entries_[i].first == entries_[i - 1].first)
        throw std::invalid_argument("mass function: duplicate focal set");
  }

  Frame frame_;
  std::vector<Entry> entries_;
};

using MassFunction = BasicMassFunction<double>;
using RationalMassFunction = BasicMassFunction<Rational>;

// --- queries taking Subset / Gamble arguments (frame-checked) --------------

double belief(const MassFunction& m, const Subset& H);
double plausibility(const MassFunction& m, const Subset& H);

/// Choquet lower prevision sum_T m(T) min_{theta in T} f(theta).
double lower_prevision(const MassFunction& m, const Gamble& f);
/// Choquet upper prevision sum_T m(T) max_{theta in T} f(theta);
/// equals -lower_prevision(m, -f).
double upper_prevision(const MassFunction& m, const Gamble& f);

bool is_nested(const MassFunction& m);

/// Exact-mode Choquet previsions over rational-valued payoffs.
Rational lower_prevision(const RationalMassFunction& m, const std::vector<Rational>& f);
Rational upper_prevision(const RationalMassFunction& m, const std::vector<Rational>& f);

template <class S>
struct CombineResult {
  BasicMassFunction<S> combined;
  S conflict;
};

/// Dempster's rule of combination: mass of each nonempty pairwise
/// intersection, renormalised by one minus the conflict (the mass landing on
/// the empty set). Duplicate intersections merge by summing. Throws on frame
/// mismatch and on total conflict 1 ("complete conflict").
template <class S>
CombineResult<S> dempster_combine(const BasicMassFunction<S>& m1,
                                  const BasicMassFunction<S>& m2) {
  if (!(m1.frame() == m2.frame()))
    throw std::invalid_argument("dempster_combine: frame mismatch");
  std::map<std::uint64_t, S> acc;
  S conflict = detail::mass_traits<S>::zero();
  for (const auto& [a, ma] : m1.entries()) {
    for (const auto& [b, mb] : m2.entries()) {
      std::uint64_t c = a & b;
      S w = ma * mb;
      if (c == 0) {
        conflict += w;
      } else {
        auto it = acc.find(c);
        if (it == acc.end()) acc.emplace(c, w);
        else it->second += w;
      }
    }
  }
  if (acc.empty() || !detail::mass_traits<S>::positive(detail::mass_traits<S>::one() - conflict))
    throw std::runtime_error("dempster_combine: complete conflict");
  std::vector<typename BasicMassFunction<S>::Entry> entries;
  entries.reserve(acc.size());
  S keep = detail::mass_traits<S>::one() - conflict;
  for (const auto& [mask, w] : acc) entries.emplace_back(mask, w / keep);
  return {BasicMassFunction<S>(m1.frame(), std::move(entries)), conflict};
}

}  // namespace imprec

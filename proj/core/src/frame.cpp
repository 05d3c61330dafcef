#include "imprec/frame.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

namespace imprec {

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty())
    throw std::invalid_argument("frame: needs at least one element");
  if (labels_.size() > 64)
    throw std::invalid_argument("frame: more than 64 elements unsupported");
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("frame: empty label");
    if (!seen.insert(l).second)
      throw std::invalid_argument("frame: duplicate label '" + l + "'");
  }
}

std::size_t Frame::index(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument("frame: unknown label '" + std::string(label) + "'");
}

Subset::Subset(Frame frame, std::uint64_t members)
    : frame_(std::move(frame)), mask_(members) {
  if ((mask_ & ~frame_.full_mask()) != 0)
    throw std::invalid_argument("subset: membership bits outside frame");
}

Subset Subset::of(const Frame& frame, const std::vector<std::string>& members) {
  std::uint64_t mask = 0;
  for (const auto& l : members) mask |= std::uint64_t{1} << frame.index(l);
  return Subset(frame, mask);
}

std::size_t Subset::count() const { return std::popcount(mask_); }

Subset Subset::unite(const Subset& o) const {
  require_same_frame(frame_, o.frame_, "subset union");
  return Subset(frame_, mask_ | o.mask_);
}

Subset Subset::intersect(const Subset& o) const {
  require_same_frame(frame_, o.frame_, "subset intersection");
  return Subset(frame_, mask_ & o.mask_);
}

bool Subset::subset_of(const Subset& o) const {
  require_same_frame(frame_, o.frame_, "subset comparison");
  return (mask_ & ~o.mask_) == 0;
}

std::vector<std::string> Subset::member_labels() const {
  std::vector<std::string> out;
  for_each_member(mask_, [&](std::size_t i) { out.push_back(frame_.label(i)); });
  return out;
}

Gamble::Gamble(Frame frame, std::vector<double> values)
    : frame_(std::move(frame)), values_(std::move(values)) {
  if (values_.size() != frame_.size())
    throw std::invalid_argument("gamble: value count must match frame size");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("gamble: non-finite value");
}

Gamble Gamble::indicator(const Subset& s) {
  std::vector<double> v(s.frame().size(), 0.0);
  for_each_member(s.mask(), [&](std::size_t i) { v[i] = 1.0; });
  return Gamble(s.frame(), std::move(v));
}

Gamble Gamble::constant(const Frame& frame, double c) {
  return Gamble(frame, std::vector<double>(frame.size(), c));
}

Gamble Gamble::negate() const {
  std::vector<double> v(values_);
  for (double& x : v) x = -x;
  return Gamble(frame_, std::move(v));
}

void require_same_frame(const Frame& a, const Frame& b, const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": frame mismatch");
}

}  // namespace imprec

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace imprec {

/// Finite possibility space: an ordered list of distinct element labels.
/// Frames are immutable values; two frames are interchangeable iff their
/// label lists are identical (same labels, same order).
class Frame {
public:
  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a label; throws std::invalid_argument if unknown.
  std::size_t index(std::string_view label) const;

  /// Bit mask with one bit per element, all set.
  std::uint64_t full_mask() const {
    return size() >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
  }

  bool operator==(const Frame&) const = default;

private:
  std::vector<std::string> labels_;
};

/// Subset of a frame. The semantic contract is a membership indicator over
/// the frame's elements; the packed 64-bit encoding limits frames to 64
/// elements, which is far beyond what subset-enumerating operations accept.
class Subset {
public:
  Subset(Frame frame, std::uint64_t members);

  /// Subset from member labels.
  static Subset of(const Frame& frame, const std::vector<std::string>& members);
  static Subset empty(const Frame& frame) { return Subset(frame, 0); }
  static Subset full(const Frame& frame) { return Subset(frame, frame.full_mask()); }

  const Frame& frame() const { return frame_; }
  std::uint64_t mask() const { return mask_; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1u; }
  bool is_empty() const { return mask_ == 0; }
  std::size_t count() const;

  Subset complement() const { return Subset(frame_, ~mask_ & frame_.full_mask()); }
  Subset unite(const Subset& o) const;
  Subset intersect(const Subset& o) const;
  bool subset_of(const Subset& o) const;

  std::vector<std::string> member_labels() const;

  bool operator==(const Subset&) const = default;

private:
  Frame frame_;
  std::uint64_t mask_;
};

/// Bounded real-valued payoff over a frame, one value per element.
class Gamble {
public:
  Gamble(Frame frame, std::vector<double> values);

  static Gamble indicator(const Subset& s);
  static Gamble constant(const Frame& frame, double c);

  const Frame& frame() const { return frame_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  Gamble negate() const;

private:
  Frame frame_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument unless the two frames are identical.
void require_same_frame(const Frame& a, const Frame& b, const char* what);

/// Iterate set bits of a mask, calling fn(index).
template <class Fn>
void for_each_member(std::uint64_t mask, Fn&& fn) {
  while (mask) {
    std::uint64_t low = mask & (~mask + 1);
    fn(static_cast<std::size_t>(__builtin_ctzll(mask)));
    mask ^= low;
  }
}

}  // namespace imprec

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bellik {

/// Frames wider than this would not fit the one-word subset masks below.
inline constexpr std::size_t kDefaultFrameCap = 24;

/// A finite set of named, mutually exclusive outcomes. Label order is fixed
/// and defines bit positions for subset masks. Immutable after construction.
class Frame {
  public:
    static std::shared_ptr<const Frame> make(std::vector<std::string> labels,
                                             std::size_t cap = kDefaultFrameCap);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const;

    /// Bit position of a label; throws std::invalid_argument if unknown.
    std::size_t index_of(std::string_view label) const;
    bool has_label(std::string_view label) const;

    /// Content equality: same labels in the same order.
    friend bool operator==(const Frame& a, const Frame& b) { return a.labels_ == b.labels_; }
    friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

  private:
    explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {}
    std::vector<std::string> labels_;
};

using FramePtr = std::shared_ptr<const Frame>;

/// A subset of a frame's outcomes, stored as a bitmask in frame bit order.
/// The empty mask is representable but is rejected as a focal element.
class SubsetMask {
  public:
    using domain_type = Frame;
    using domain_ptr = FramePtr;

    SubsetMask(FramePtr frame, std::uint32_t bits);

    static SubsetMask empty(FramePtr frame) { return SubsetMask(std::move(frame), 0); }
    static SubsetMask full(FramePtr frame);
    static SubsetMask singleton(FramePtr frame, std::string_view label);
    static SubsetMask of(FramePtr frame, std::span<const std::string> labels);
    static SubsetMask of(FramePtr frame, std::initializer_list<std::string_view> labels);

    const FramePtr& frame() const { return frame_; }
    const FramePtr& domain() const { return frame_; }
    std::uint32_t bits() const { return bits_; }

    std::size_t count() const;
    bool none() const { return bits_ == 0; }
    bool is_singleton() const { return count() == 1; }
    bool test(std::size_t i) const;
    bool contains_label(std::string_view label) const;

    SubsetMask operator&(const SubsetMask& o) const;
    SubsetMask operator|(const SubsetMask& o) const;
    SubsetMask complement() const;
    bool is_subset_of(const SubsetMask& o) const { return (bits_ & o.bits_) == bits_; }
    bool intersects(const SubsetMask& o) const { return (bits_ & o.bits_) != 0; }

    /// Labels of the member outcomes, in frame (bit) order.
    std::vector<std::string> sorted_labels() const;

    friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
        return a.bits_ == b.bits_ && (a.frame_ == b.frame_ || *a.frame_ == *b.frame_);
    }
    friend bool operator!=(const SubsetMask& a, const SubsetMask& b) { return !(a == b); }
    /// Ordering over masks of one frame (map-key order).
    friend bool operator<(const SubsetMask& a, const SubsetMask& b) { return a.bits_ < b.bits_; }

  private:
    FramePtr frame_;
    std::uint32_t bits_;
};

/// Throws std::invalid_argument unless both refer to content-equal frames.
void require_same_frame(const Frame& a, const Frame& b);

}  // namespace bellik

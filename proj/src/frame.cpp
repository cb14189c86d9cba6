#include "bellik/frame.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

#include "bellik/errors.hpp"

namespace bellik {

FramePtr Frame::make(std::vector<std::string> labels, std::size_t cap) {
    if (labels.empty()) {
        throw std::invalid_argument("frame needs at least one outcome");
    }
    if (labels.size() > cap || labels.size() > 32) {
        throw SizeCapError("frame cardinality " + std::to_string(labels.size()) +
                           " exceeds cap " + std::to_string(std::min<std::size_t>(cap, 32)));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels) {
        if (l.empty()) {
            throw std::invalid_argument("empty outcome label");
        }
        if (!seen.insert(l).second) {
            throw std::invalid_argument("duplicate outcome label: " + l);
        }
    }
    return FramePtr(new Frame(std::move(labels)));
}

const std::string& Frame::label(std::size_t i) const {
    if (i >= labels_.size()) {
        throw std::out_of_range("outcome index out of range");
    }
    return labels_[i];
}

std::size_t Frame::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown outcome label: " + std::string(label));
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool Frame::has_label(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

SubsetMask::SubsetMask(FramePtr frame, std::uint32_t bits) : frame_(std::move(frame)), bits_(bits) {
    if (!frame_) {
        throw std::invalid_argument("null frame");
    }
    const std::uint32_t valid =
        frame_->size() >= 32 ? ~0u : (1u << frame_->size()) - 1u;
    if ((bits_ & ~valid) != 0) {
        throw std::invalid_argument("subset mask uses bits outside the frame");
    }
}

namespace {
std::uint32_t all_bits(std::size_t n) {
    return n >= 32 ? ~0u : (1u << n) - 1u;
}
}  // namespace

SubsetMask SubsetMask::full(FramePtr frame) {
    const std::uint32_t all = all_bits(frame->size());
    return SubsetMask(std::move(frame), all);
}

SubsetMask SubsetMask::singleton(FramePtr frame, std::string_view label) {
    const std::size_t i = frame->index_of(label);
    return SubsetMask(std::move(frame), 1u << i);
}

SubsetMask SubsetMask::of(FramePtr frame, std::span<const std::string> labels) {
    std::uint32_t bits = 0;
    for (const auto& l : labels) {
        bits |= 1u << frame->index_of(l);
    }
    return SubsetMask(std::move(frame), bits);
}

SubsetMask SubsetMask::of(FramePtr frame, std::initializer_list<std::string_view> labels) {
    std::uint32_t bits = 0;
    for (auto l : labels) {
        bits |= 1u << frame->index_of(l);
    }
    return SubsetMask(std::move(frame), bits);
}

std::size_t SubsetMask::count() const {
    return static_cast<std::size_t>(std::popcount(bits_));
}

bool SubsetMask::test(std::size_t i) const {
    if (i >= frame_->size()) {
        throw std::out_of_range("outcome index out of range");
    }
    return (bits_ >> i) & 1u;
}

bool SubsetMask::contains_label(std::string_view label) const {
    return test(frame_->index_of(label));
}

SubsetMask SubsetMask::operator&(const SubsetMask& o) const {
    if (frame_ != o.frame_) {
        require_same_frame(*frame_, *o.frame_);
    }
    return SubsetMask(frame_, bits_ & o.bits_);
}

SubsetMask SubsetMask::operator|(const SubsetMask& o) const {
    if (frame_ != o.frame_) {
        require_same_frame(*frame_, *o.frame_);
    }
    return SubsetMask(frame_, bits_ | o.bits_);
}

SubsetMask SubsetMask::complement() const {
    return SubsetMask(frame_, bits_ ^ all_bits(frame_->size()));
}

std::vector<std::string> SubsetMask::sorted_labels() const {
    std::vector<std::string> out;
    out.reserve(count());
    for (std::size_t i = 0; i < frame_->size(); ++i) {
        if ((bits_ >> i) & 1u) {
            out.push_back(frame_->label(i));
        }
    }
    return out;
}

void require_same_frame(const Frame& a, const Frame& b) {
    if (!(a == b)) {
        throw std::invalid_argument("frame mismatch");
    }
}

}  // namespace bellik

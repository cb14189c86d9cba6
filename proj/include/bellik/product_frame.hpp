#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bellik/frame.hpp"

namespace bellik {

/// Cap on the number of tuples any materialized product subset may span.
inline constexpr std::size_t kDefaultProductCap = std::size_t{1} << 20;

using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Cartesian product of component frames. Tuples are indexed
/// lexicographically with the rightmost factor running fastest.
class ProductFrame {
  public:
    static std::shared_ptr<const ProductFrame> make(std::vector<FramePtr> factors,
                                                    std::size_t cap = kDefaultProductCap);

    std::size_t arity() const { return factors_.size(); }
    const FramePtr& factor(std::size_t i) const;
    const std::vector<FramePtr>& factors() const { return factors_; }
    std::size_t size() const { return size_; }
    std::size_t stride(std::size_t i) const;

    /// Index of the tuple given one outcome label per factor.
    std::size_t tuple_index(std::span<const std::string> labels) const;
    /// Index of the tuple given one outcome index per factor.
    std::size_t tuple_index_of(std::span<const std::size_t> components) const;
    /// Outcome labels of the tuple at `index`, one per factor.
    std::vector<std::string> index_tuple(std::size_t index) const;
    /// Outcome index at `position` of the tuple at `index`.
    std::size_t component_index(std::size_t index, std::size_t position) const;

    friend bool operator==(const ProductFrame& a, const ProductFrame& b);
    friend bool operator!=(const ProductFrame& a, const ProductFrame& b) { return !(a == b); }

  private:
    ProductFrame(std::vector<FramePtr> factors, std::vector<std::size_t> strides, std::size_t size)
        : factors_(std::move(factors)), strides_(std::move(strides)), size_(size) {}

    std::vector<FramePtr> factors_;
    std::vector<std::size_t> strides_;
    std::size_t size_;
};

using ProductFramePtr = std::shared_ptr<const ProductFrame>;

/// An arbitrary subset of a product frame: bit i set iff tuple i belongs.
class ProductSubset {
  public:
    using domain_type = ProductFrame;
    using domain_ptr = ProductFramePtr;

    ProductSubset(ProductFramePtr product, Bitset bits);

    static ProductSubset empty(ProductFramePtr product);
    static ProductSubset full(ProductFramePtr product);
    static ProductSubset singleton_index(ProductFramePtr product, std::size_t index);
    static ProductSubset singleton_tuple(ProductFramePtr product,
                                         std::span<const std::string> labels);

    const ProductFramePtr& product() const { return product_; }
    const ProductFramePtr& domain() const { return product_; }
    const Bitset& bits() const { return bits_; }

    std::size_t count() const { return bits_.count(); }
    bool none() const { return bits_.none(); }
    bool is_singleton() const { return count() == 1; }
    bool test(std::size_t i) const { return bits_.test(i); }

    ProductSubset operator&(const ProductSubset& o) const;
    ProductSubset operator|(const ProductSubset& o) const;
    ProductSubset complement() const;
    bool is_subset_of(const ProductSubset& o) const { return bits_.is_subset_of(o.bits_); }
    bool intersects(const ProductSubset& o) const { return bits_.intersects(o.bits_); }

    /// Member tuple indices in increasing order.
    std::vector<std::size_t> indices() const;

    friend bool operator==(const ProductSubset& a, const ProductSubset& b) {
        return a.bits_ == b.bits_ && (a.product_ == b.product_ || *a.product_ == *b.product_);
    }
    friend bool operator!=(const ProductSubset& a, const ProductSubset& b) { return !(a == b); }
    friend bool operator<(const ProductSubset& a, const ProductSubset& b) {
        return a.bits_ < b.bits_;
    }

  private:
    ProductFramePtr product_;
    Bitset bits_;
};

/// A Cartesian box A1 x ... x An, one nonempty component subset per factor.
class BoxSubset {
  public:
    BoxSubset(ProductFramePtr product, std::vector<SubsetMask> components);

    const ProductFramePtr& product() const { return product_; }
    const std::vector<SubsetMask>& components() const { return components_; }
    /// Number of tuples in the box: the product of component sizes.
    std::size_t volume() const;
    ProductSubset to_subset() const;

  private:
    ProductFramePtr product_;
    std::vector<SubsetMask> components_;
};

/// All tuples whose component at `position` lies in `subset`.
ProductSubset cylindrical_extension(const SubsetMask& subset, ProductFramePtr product,
                                    std::size_t position);

/// Outcomes appearing at `position` across the subset's tuples.
SubsetMask project(const ProductSubset& subset, std::size_t position);

}  // namespace bellik

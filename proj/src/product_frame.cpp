#include "bellik/product_frame.hpp"

#include <limits>
#include <stdexcept>

#include "bellik/errors.hpp"

namespace bellik {

ProductFramePtr ProductFrame::make(std::vector<FramePtr> factors, std::size_t cap) {
    if (factors.empty()) {
        throw std::invalid_argument("product frame needs at least one factor");
    }
    for (const auto& f : factors) {
        if (!f) {
            throw std::invalid_argument("null factor frame");
        }
    }
    // Strides right-to-left: the rightmost factor runs fastest.
    std::vector<std::size_t> strides(factors.size());
    std::size_t size = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
        strides[i] = size;
        const std::size_t card = factors[i]->size();
        if (size > cap / card) {
            throw SizeCapError("product frame size exceeds cap " + std::to_string(cap));
        }
        size *= card;
    }
    return ProductFramePtr(new ProductFrame(std::move(factors), std::move(strides), size));
}

const FramePtr& ProductFrame::factor(std::size_t i) const {
    if (i >= factors_.size()) {
        throw std::out_of_range("factor position out of range");
    }
    return factors_[i];
}

std::size_t ProductFrame::stride(std::size_t i) const {
    if (i >= strides_.size()) {
        throw std::out_of_range("factor position out of range");
    }
    return strides_[i];
}

std::size_t ProductFrame::tuple_index(std::span<const std::string> labels) const {
    if (labels.size() != factors_.size()) {
        throw std::invalid_argument("tuple arity " + std::to_string(labels.size()) +
                                    " does not match product arity " +
                                    std::to_string(factors_.size()));
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        idx += factors_[i]->index_of(labels[i]) * strides_[i];
    }
    return idx;
}

std::size_t ProductFrame::tuple_index_of(std::span<const std::size_t> components) const {
    if (components.size() != factors_.size()) {
        throw std::invalid_argument("tuple arity does not match product arity");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (components[i] >= factors_[i]->size()) {
            throw std::out_of_range("component index out of range");
        }
        idx += components[i] * strides_[i];
    }
    return idx;
}

std::vector<std::string> ProductFrame::index_tuple(std::size_t index) const {
    if (index >= size_) {
        throw std::out_of_range("tuple index out of range");
    }
    std::vector<std::string> out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        out[i] = factors_[i]->label(component_index(index, i));
    }
    return out;
}

std::size_t ProductFrame::component_index(std::size_t index, std::size_t position) const {
    if (position >= factors_.size()) {
        throw std::out_of_range("factor position out of range");
    }
    return (index / strides_[position]) % factors_[position]->size();
}

bool operator==(const ProductFrame& a, const ProductFrame& b) {
    if (a.factors_.size() != b.factors_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.factors_.size(); ++i) {
        if (!(*a.factors_[i] == *b.factors_[i])) {
            return false;
        }
    }
    return true;
}

ProductSubset::ProductSubset(ProductFramePtr product, Bitset bits)
    : product_(std::move(product)), bits_(std::move(bits)) {
    if (!product_) {
        throw std::invalid_argument("null product frame");
    }
    if (bits_.size() != product_->size()) {
        throw std::invalid_argument("bitset length does not match product size");
    }
}

ProductSubset ProductSubset::empty(ProductFramePtr product) {
    Bitset bits(product->size());
    return ProductSubset(std::move(product), std::move(bits));
}

ProductSubset ProductSubset::full(ProductFramePtr product) {
    Bitset bits(product->size());
    bits.set();
    return ProductSubset(std::move(product), std::move(bits));
}

ProductSubset ProductSubset::singleton_index(ProductFramePtr product, std::size_t index) {
    if (index >= product->size()) {
        throw std::out_of_range("tuple index out of range");
    }
    Bitset bits(product->size());
    bits.set(index);
    return ProductSubset(std::move(product), std::move(bits));
}

ProductSubset ProductSubset::singleton_tuple(ProductFramePtr product,
                                             std::span<const std::string> labels) {
    const std::size_t idx = product->tuple_index(labels);
    return singleton_index(std::move(product), idx);
}

ProductSubset ProductSubset::operator&(const ProductSubset& o) const {
    if (product_ != o.product_ && !(*product_ == *o.product_)) {
        throw std::invalid_argument("frame mismatch");
    }
    return ProductSubset(product_, bits_ & o.bits_);
}

ProductSubset ProductSubset::operator|(const ProductSubset& o) const {
    if (product_ != o.product_ && !(*product_ == *o.product_)) {
        throw std::invalid_argument("frame mismatch");
    }
    return ProductSubset(product_, bits_ | o.bits_);
}

ProductSubset ProductSubset::complement() const {
    return ProductSubset(product_, ~bits_);
}

std::vector<std::size_t> ProductSubset::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t i = bits_.find_first(); i != Bitset::npos; i = bits_.find_next(i)) {
        out.push_back(i);
    }
    return out;
}

BoxSubset::BoxSubset(ProductFramePtr product, std::vector<SubsetMask> components)
    : product_(std::move(product)), components_(std::move(components)) {
    if (!product_) {
        throw std::invalid_argument("null product frame");
    }
    if (components_.size() != product_->arity()) {
        throw std::invalid_argument("box arity does not match product arity");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        require_same_frame(*components_[i].frame(), *product_->factor(i));
        if (components_[i].none()) {
            throw std::invalid_argument("box component must be nonempty");
        }
    }
}

std::size_t BoxSubset::volume() const {
    std::size_t v = 1;
    for (const auto& c : components_) {
        v *= c.count();
    }
    return v;
}

ProductSubset BoxSubset::to_subset() const {
    Bitset bits(product_->size());
    // Odometer over the per-factor member outcomes.
    const std::size_t n = components_.size();
    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < components_[i].frame()->size(); ++j) {
            if (components_[i].test(j)) {
                members[i].push_back(j);
            }
        }
    }
    std::vector<std::size_t> pos(n, 0);
    while (true) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            idx += members[i][pos[i]] * product_->stride(i);
        }
        bits.set(idx);
        std::size_t i = n;
        while (i-- > 0) {
            if (++pos[i] < members[i].size()) {
                break;
            }
            pos[i] = 0;
            if (i == 0) {
                return ProductSubset(product_, std::move(bits));
            }
        }
    }
}

ProductSubset cylindrical_extension(const SubsetMask& subset, ProductFramePtr product,
                                    std::size_t position) {
    if (position >= product->arity()) {
        throw std::out_of_range("factor position out of range");
    }
    require_same_frame(*subset.frame(), *product->factor(position));
    if (subset.none()) {
        return ProductSubset::empty(std::move(product));
    }
    std::vector<SubsetMask> components;
    components.reserve(product->arity());
    for (std::size_t i = 0; i < product->arity(); ++i) {
        components.push_back(i == position ? SubsetMask(product->factor(i), subset.bits())
                                           : SubsetMask::full(product->factor(i)));
    }
    return BoxSubset(std::move(product), std::move(components)).to_subset();
}

SubsetMask project(const ProductSubset& subset, std::size_t position) {
    const auto& product = *subset.product();
    if (position >= product.arity()) {
        throw std::out_of_range("factor position out of range");
    }
    std::uint32_t bits = 0;
    const auto& bs = subset.bits();
    for (std::size_t i = bs.find_first(); i != Bitset::npos; i = bs.find_next(i)) {
        bits |= 1u << product.component_index(i, position);
    }
    return SubsetMask(product.factor(position), bits);
}

}  // namespace bellik

#include "bellik/mass.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bellik {

namespace {

template <class DomainPtr>
void require_same_domain(const DomainPtr& a, const DomainPtr& b) {
    if (a != b && !(*a == *b)) {
        throw std::invalid_argument("frame mismatch");
    }
}

}  // namespace

template <class Set>
BasicMassFunction<Set> BasicMassFunction<Set>::make(
    domain_ptr domain, std::vector<std::pair<Set, double>> assignments) {
    if (!domain) {
        throw std::invalid_argument("null frame");
    }
    focal_map focal;
    double sum = 0.0;
    for (auto& [set, mass] : assignments) {
        require_same_domain(domain, set.domain());
        if (!(mass >= 0.0) || !std::isfinite(mass)) {
            throw std::invalid_argument("mass values must be finite and nonnegative");
        }
        if (mass == 0.0) {
            continue;  // canonical form drops zero-mass entries
        }
        if (set.none()) {
            throw std::invalid_argument("the empty set cannot carry positive mass");
        }
        auto [it, inserted] = focal.emplace(set, mass);
        if (!inserted) {
            throw std::invalid_argument("duplicate focal element");
        }
        sum += mass;
    }
    if (std::abs(sum - 1.0) > kMassSumTolerance) {
        throw std::invalid_argument("masses sum to " + std::to_string(sum) + ", expected 1");
    }
    for (auto& [set, mass] : focal) {
        mass /= sum;
    }
    return BasicMassFunction(std::move(domain), std::move(focal));
}

template <class Set>
BasicMassFunction<Set> BasicMassFunction<Set>::from_normalized(domain_ptr domain,
                                                               focal_map focal) {
    if (!domain) {
        throw std::invalid_argument("null frame");
    }
    double sum = 0.0;
    for (const auto& [set, mass] : focal) {
        require_same_domain(domain, set.domain());
        if (set.none() || !(mass > 0.0)) {
            throw std::logic_error("invalid focal element in normalized mass");
        }
        sum += mass;
    }
    if (std::abs(sum - 1.0) > kMassSumTolerance) {
        throw std::logic_error("normalized mass sums to " + std::to_string(sum));
    }
    return BasicMassFunction(std::move(domain), std::move(focal));
}

template <class Set>
double BasicMassFunction<Set>::mass(const Set& set) const {
    require_event(set);
    auto it = focal_.find(set);
    return it == focal_.end() ? 0.0 : it->second;
}

template <class Set>
double BasicMassFunction<Set>::belief(const Set& event) const {
    require_event(event);
    double sum = 0.0;
    for (const auto& [set, mass] : focal_) {
        if (set.is_subset_of(event)) {
            sum += mass;
        }
    }
    return sum;
}

template <class Set>
double BasicMassFunction<Set>::plausibility(const Set& event) const {
    // 1 - Bel(complement) keeps the duality exact; the focal elements that
    // intersect `event` are exactly those not contained in its complement.
    return 1.0 - belief(event.complement());
}

template <class Set>
bool BasicMassFunction<Set>::is_bayesian() const {
    for (const auto& [set, mass] : focal_) {
        if (!set.is_singleton()) {
            return false;
        }
    }
    return true;
}

template <class Set>
bool BasicMassFunction<Set>::is_vacuous() const {
    return focal_.size() == 1 && focal_.begin()->first.count() == domain_->size() &&
           focal_.begin()->second == 1.0;
}

template <class Set>
void BasicMassFunction<Set>::require_event(const Set& event) const {
    require_same_domain(domain_, event.domain());
}

template class BasicMassFunction<SubsetMask>;
template class BasicMassFunction<ProductSubset>;

MassFunction make_mass(FramePtr frame, std::vector<std::pair<SubsetMask, double>> assignments) {
    return MassFunction::make(std::move(frame), std::move(assignments));
}

MassFunction make_mass(FramePtr frame,
                       std::vector<std::pair<std::vector<std::string>, double>> assignments) {
    std::vector<std::pair<SubsetMask, double>> resolved;
    resolved.reserve(assignments.size());
    for (const auto& [labels, mass] : assignments) {
        resolved.emplace_back(SubsetMask::of(frame, labels), mass);
    }
    return MassFunction::make(std::move(frame), std::move(resolved));
}

MassFunction categorical(FramePtr frame, const SubsetMask& event) {
    if (event.none()) {
        throw std::invalid_argument("categorical mass needs a nonempty event");
    }
    return MassFunction::make(std::move(frame), {{event, 1.0}});
}

MassFunction vacuous(FramePtr frame) {
    auto full = SubsetMask::full(frame);
    return MassFunction::make(std::move(frame), {{full, 1.0}});
}

ProductMassFunction vacuous_extension(const MassFunction& mass, ProductFramePtr product,
                                      std::size_t position) {
    if (position >= product->arity()) {
        throw std::out_of_range("factor position out of range");
    }
    require_same_frame(*mass.domain(), *product->factor(position));
    ProductMassFunction::focal_map focal;
    for (const auto& [set, m] : mass.focal()) {
        focal.emplace(cylindrical_extension(set, product, position), m);
    }
    return ProductMassFunction::from_normalized(std::move(product), std::move(focal));
}

MassFunction marginalize(const ProductMassFunction& mass, std::size_t position) {
    const auto& product = mass.domain();
    if (position >= product->arity()) {
        throw std::out_of_range("factor position out of range");
    }
    MassFunction::focal_map focal;
    for (const auto& [set, m] : mass.focal()) {
        auto [it, inserted] = focal.emplace(project(set, position), m);
        if (!inserted) {
            it->second += m;
        }
    }
    return MassFunction::from_normalized(product->factor(position), std::move(focal));
}

}  // namespace bellik

#include "bellik/combination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bellik/errors.hpp"

namespace bellik {

CombinationRule rule_from_string(std::string_view name) {
    if (name == "dempster") {
        return CombinationRule::dempster;
    }
    if (name == "conjunctive") {
        return CombinationRule::conjunctive;
    }
    if (name == "disjunctive") {
        return CombinationRule::disjunctive;
    }
    throw std::invalid_argument("unknown combination rule: " + std::string(name));
}

std::string to_string(CombinationRule rule) {
    switch (rule) {
        case CombinationRule::dempster:
            return "dempster";
        case CombinationRule::conjunctive:
            return "conjunctive";
        case CombinationRule::disjunctive:
            return "disjunctive";
    }
    throw std::logic_error("bad rule");
}

namespace {

/// Accumulates per-set contributions and sums each bucket in ascending value
/// order, so results do not depend on the order pairs were visited. This is
/// what makes combine(a,b) == combine(b,a) bitwise.
template <class Set>
class SortedAccumulator {
  public:
    void add(Set set, double value) {
        buckets_[std::move(set)].push_back(value);
    }

    std::map<Set, double> finalize(double dust = kMassDust) {
        std::map<Set, double> out;
        for (auto& [set, values] : buckets_) {
            std::sort(values.begin(), values.end());
            double sum = 0.0;
            for (double v : values) {
                sum += v;
            }
            if (sum >= dust) {
                out.emplace(set, sum);
            }
        }
        return out;
    }

  private:
    std::map<Set, std::vector<double>> buckets_;
};

template <class Mass>
void require_combinable(const Mass& a, const Mass& b) {
    if (!(*a.domain() == *b.domain())) {
        throw std::invalid_argument("frame mismatch");
    }
}

enum class PairOp { intersect, unite };

template <class Mass>
SortedAccumulator<typename Mass::set_type> pairwise(const Mass& a, const Mass& b, PairOp op) {
    require_combinable(a, b);
    SortedAccumulator<typename Mass::set_type> acc;
    for (const auto& [sa, ma] : a.focal()) {
        for (const auto& [sb, mb] : b.focal()) {
            acc.add(op == PairOp::intersect ? sa & sb : sa | sb, ma * mb);
        }
    }
    return acc;
}

template <class Mass>
BasicUnnormalizedMass<typename Mass::set_type> conjunctive_impl(const Mass& a, const Mass& b) {
    auto focal = pairwise(a, b, PairOp::intersect).finalize();
    double conflict = 0.0;
    if (auto it = std::find_if(focal.begin(), focal.end(),
                               [](const auto& kv) { return kv.first.none(); });
        it != focal.end()) {
        conflict = it->second;
        focal.erase(it);
    }
    return BasicUnnormalizedMass<typename Mass::set_type>(a.domain(), conflict, std::move(focal));
}

template <class Mass>
Mass disjunctive_impl(const Mass& a, const Mass& b) {
    auto focal = pairwise(a, b, PairOp::unite).finalize();
    return Mass::from_normalized(a.domain(), std::move(focal));
}

}  // namespace

template <class Set>
BasicUnnormalizedMass<Set>::BasicUnnormalizedMass(domain_ptr domain, double conflict,
                                                  focal_map focal)
    : domain_(std::move(domain)), conflict_(conflict), focal_(std::move(focal)) {
    if (!domain_) {
        throw std::invalid_argument("null frame");
    }
    if (conflict_ < 0.0 || std::abs(total() - 1.0) > kMassSumTolerance) {
        throw std::logic_error("unnormalized mass does not total 1");
    }
}

template <class Set>
double BasicUnnormalizedMass<Set>::total() const {
    double sum = conflict_;
    for (const auto& [set, mass] : focal_) {
        sum += mass;
    }
    return sum;
}

template <class Set>
BasicMassFunction<Set> BasicUnnormalizedMass<Set>::normalized() const {
    if (conflict_ >= kConflictLimit) {
        throw TotalConflictError("total conflict: combined evidence has empty intersection");
    }
    focal_map focal = focal_;
    const double scale = 1.0 - conflict_;
    for (auto& [set, mass] : focal) {
        mass /= scale;
    }
    return BasicMassFunction<Set>::from_normalized(domain_, std::move(focal));
}

template class BasicUnnormalizedMass<SubsetMask>;
template class BasicUnnormalizedMass<ProductSubset>;

UnnormalizedMass combine_conjunctive(const MassFunction& a, const MassFunction& b) {
    return conjunctive_impl(a, b);
}

ProductUnnormalizedMass combine_conjunctive(const ProductMassFunction& a,
                                            const ProductMassFunction& b) {
    return conjunctive_impl(a, b);
}

MassFunction combine_dempster(const MassFunction& a, const MassFunction& b) {
    return conjunctive_impl(a, b).normalized();
}

ProductMassFunction combine_dempster(const ProductMassFunction& a, const ProductMassFunction& b) {
    return conjunctive_impl(a, b).normalized();
}

MassFunction combine_disjunctive(const MassFunction& a, const MassFunction& b) {
    return disjunctive_impl(a, b);
}

ProductMassFunction combine_disjunctive(const ProductMassFunction& a,
                                        const ProductMassFunction& b) {
    return disjunctive_impl(a, b);
}

MassFunction condition(const MassFunction& mass, const SubsetMask& event) {
    if (event.none()) {
        throw std::invalid_argument("conditioning event must be nonempty");
    }
    return combine_dempster(mass, categorical(mass.domain(), event));
}

namespace {

/// Left fold of the conjunctive rule over same-frame masses, carrying the
/// empty set through the accumulation like any other subset.
template <class Mass>
BasicUnnormalizedMass<typename Mass::set_type> conjunctive_fold(std::span<const Mass> masses) {
    using Set = typename Mass::set_type;
    if (masses.empty()) {
        throw std::invalid_argument("need at least one mass function");
    }
    for (const auto& m : masses) {
        require_combinable(masses.front(), m);
    }
    // Working focal map that may contain the empty set.
    std::map<Set, double> acc(masses.front().focal().begin(), masses.front().focal().end());
    for (std::size_t i = 1; i < masses.size(); ++i) {
        SortedAccumulator<Set> next;
        for (const auto& [sa, ma] : acc) {
            for (const auto& [sb, mb] : masses[i].focal()) {
                next.add(sa & sb, ma * mb);
            }
        }
        acc = next.finalize();
    }
    double conflict = 0.0;
    if (auto it = std::find_if(acc.begin(), acc.end(),
                               [](const auto& kv) { return kv.first.none(); });
        it != acc.end()) {
        conflict = it->second;
        acc.erase(it);
    }
    return BasicUnnormalizedMass<Set>(masses.front().domain(), conflict, std::move(acc));
}

}  // namespace

UnnormalizedMass combine_conjunctive_all(std::span<const MassFunction> masses) {
    return conjunctive_fold(masses);
}

MassFunction combine_dempster_all(std::span<const MassFunction> masses) {
    if (masses.size() == 1) {
        return masses.front();
    }
    MassFunction out = combine_dempster(masses[0], masses[1]);
    for (std::size_t i = 2; i < masses.size(); ++i) {
        out = combine_dempster(out, masses[i]);
    }
    return out;
}

MassFunction combine_disjunctive_all(std::span<const MassFunction> masses) {
    if (masses.empty()) {
        throw std::invalid_argument("need at least one mass function");
    }
    MassFunction out = masses.front();
    for (std::size_t i = 1; i < masses.size(); ++i) {
        out = combine_disjunctive(out, masses[i]);
    }
    return out;
}

ProductMassFunction combine_many(std::span<const MassFunction> masses, CombinationRule rule,
                                 std::size_t product_cap) {
    if (masses.empty()) {
        throw std::invalid_argument("need at least one mass function");
    }
    std::vector<FramePtr> factors;
    factors.reserve(masses.size());
    for (const auto& m : masses) {
        factors.push_back(m.domain());
    }
    auto product = ProductFrame::make(std::move(factors), product_cap);

    std::vector<ProductMassFunction> extended;
    extended.reserve(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) {
        extended.push_back(vacuous_extension(masses[i], product, i));
    }

    if (rule == CombinationRule::disjunctive) {
        ProductMassFunction out = extended.front();
        for (std::size_t i = 1; i < extended.size(); ++i) {
            out = combine_disjunctive(out, extended[i]);
        }
        return out;
    }

    // Conjunctive / Dempster: extensions restrict disjoint factor positions,
    // so no intersection is ever empty and the two rules coincide. The fold
    // still tracks the empty-set slot and checks it stays at zero.
    auto folded = conjunctive_fold<ProductMassFunction>(extended);
    if (folded.conflict() != 0.0) {
        if (rule == CombinationRule::dempster) {
            return folded.normalized();
        }
        throw std::logic_error("conjunctive combination of extensions produced conflict");
    }
    return ProductMassFunction::from_normalized(folded.domain(), folded.focal());
}

}  // namespace bellik

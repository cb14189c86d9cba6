#pragma once

#include <span>
#include <string>
#include <string_view>

#include "bellik/mass.hpp"

namespace bellik {

/// Dempster normalization refuses conflicts this close to 1.
inline constexpr double kConflictLimit = 1.0 - 1e-12;

enum class CombinationRule { dempster, conjunctive, disjunctive };

CombinationRule rule_from_string(std::string_view name);
std::string to_string(CombinationRule rule);

/// Conjunctive-combination result before normalization: a mass assignment
/// that may put weight on the empty set (the conflict mass).
template <class Set>
class BasicUnnormalizedMass {
  public:
    using set_type = Set;
    using domain_ptr = typename Set::domain_ptr;
    using focal_map = typename BasicMassFunction<Set>::focal_map;

    BasicUnnormalizedMass(domain_ptr domain, double conflict, focal_map focal);

    const domain_ptr& domain() const { return domain_; }
    double conflict() const { return conflict_; }
    const focal_map& focal() const { return focal_; }
    /// Conflict plus all focal masses; 1 within tolerance by construction.
    double total() const;

    /// Removes the empty-set mass and rescales by 1 - conflict.
    /// Throws TotalConflictError when the conflict is (numerically) total.
    BasicMassFunction<Set> normalized() const;

  private:
    domain_ptr domain_;
    double conflict_;
    focal_map focal_;
};

using UnnormalizedMass = BasicUnnormalizedMass<SubsetMask>;
using ProductUnnormalizedMass = BasicUnnormalizedMass<ProductSubset>;

/// Intersection-based combination keeping the conflict mass on the empty set.
UnnormalizedMass combine_conjunctive(const MassFunction& a, const MassFunction& b);
ProductUnnormalizedMass combine_conjunctive(const ProductMassFunction& a,
                                            const ProductMassFunction& b);

/// Dempster's rule: conjunctive combination with conflict normalized away.
MassFunction combine_dempster(const MassFunction& a, const MassFunction& b);
ProductMassFunction combine_dempster(const ProductMassFunction& a, const ProductMassFunction& b);

/// Union-based combination; produces no conflict.
MassFunction combine_disjunctive(const MassFunction& a, const MassFunction& b);
ProductMassFunction combine_disjunctive(const ProductMassFunction& a,
                                        const ProductMassFunction& b);

/// Dempster conditioning on `event`: combination with the categorical mass.
MassFunction condition(const MassFunction& mass, const SubsetMask& event);

/// n-ary same-frame folds (left-to-right).
UnnormalizedMass combine_conjunctive_all(std::span<const MassFunction> masses);
MassFunction combine_dempster_all(std::span<const MassFunction> masses);
MassFunction combine_disjunctive_all(std::span<const MassFunction> masses);

/// Vacuously extends one mass per factor onto their product frame and folds
/// the pairwise rule left-to-right. This is the brute-force route for the
/// repeated-trials likelihood.
ProductMassFunction combine_many(std::span<const MassFunction> masses, CombinationRule rule,
                                 std::size_t product_cap = kDefaultProductCap);

}  // namespace bellik

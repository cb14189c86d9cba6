#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bellik/frame.hpp"
#include "bellik/product_frame.hpp"

namespace bellik {

/// Mass sums may deviate from 1 by at most this much before construction fails.
inline constexpr double kMassSumTolerance = 1e-9;
/// Accumulated masses below this are floating-point dust and get dropped.
inline constexpr double kMassDust = 1e-15;

/// A basic probability assignment: positive masses on nonempty subsets,
/// summing to 1. Canonical form: zero-mass entries are dropped on
/// construction. Immutable; all queries are pure.
template <class Set>
class BasicMassFunction {
  public:
    using set_type = Set;
    using domain_ptr = typename Set::domain_ptr;
    using focal_map = std::map<Set, double>;

    /// Builds from external assignments: validates, drops zeros, then
    /// renormalizes the stored masses to sum to 1.
    static BasicMassFunction make(domain_ptr domain,
                                  std::vector<std::pair<Set, double>> assignments);

    /// Builds from an already-normalized focal map (combination results and
    /// extensions). Validates the invariants but keeps masses as given.
    static BasicMassFunction from_normalized(domain_ptr domain, focal_map focal);

    const domain_ptr& domain() const { return domain_; }
    const focal_map& focal() const { return focal_; }
    std::size_t focal_count() const { return focal_.size(); }

    /// Mass of a subset; 0 when not a focal element.
    double mass(const Set& set) const;

    /// Total mass of focal elements contained in `event`.
    double belief(const Set& event) const;

    /// Total mass of focal elements intersecting `event`.
    double plausibility(const Set& event) const;

    /// True iff every focal element is a singleton.
    bool is_bayesian() const;

    /// True iff the whole frame carries mass 1.
    bool is_vacuous() const;

    friend bool operator==(const BasicMassFunction& a, const BasicMassFunction& b) {
        return *a.domain_ == *b.domain_ && a.focal_ == b.focal_;
    }
    friend bool operator!=(const BasicMassFunction& a, const BasicMassFunction& b) {
        return !(a == b);
    }

  private:
    BasicMassFunction(domain_ptr domain, focal_map focal)
        : domain_(std::move(domain)), focal_(std::move(focal)) {}

    void require_event(const Set& event) const;

    domain_ptr domain_;
    focal_map focal_;
};

using MassFunction = BasicMassFunction<SubsetMask>;
using ProductMassFunction = BasicMassFunction<ProductSubset>;

/// Spec'd constructor spelling for single-frame masses.
MassFunction make_mass(FramePtr frame, std::vector<std::pair<SubsetMask, double>> assignments);
/// Convenience: assignments keyed by label lists.
MassFunction make_mass(FramePtr frame,
                       std::vector<std::pair<std::vector<std::string>, double>> assignments);

/// Mass 1 on a single nonempty event (hard evidence).
MassFunction categorical(FramePtr frame, const SubsetMask& event);

/// Mass 1 on the whole frame (total ignorance).
MassFunction vacuous(FramePtr frame);

/// Lifts a mass function to a product frame: each focal element maps to its
/// cylindrical extension at `position` with unchanged mass.
ProductMassFunction vacuous_extension(const MassFunction& mass, ProductFramePtr product,
                                      std::size_t position);

/// Sums product-frame masses by their projection at `position`.
MassFunction marginalize(const ProductMassFunction& mass, std::size_t position);

}  // namespace bellik

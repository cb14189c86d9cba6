#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellik/combination.hpp"

namespace bellik {

/// Fast factorized paths must agree with the brute-force route to this much.
inline constexpr double kFactorizationTolerance = 1e-12;

/// One mass function per trial plus the combination rule that defines the
/// joint belief over the product of the trial frames. Trials need not share
/// a frame nor a distribution.
struct TrialModel {
    std::vector<MassFunction> trials;
    CombinationRule rule = CombinationRule::conjunctive;

    std::size_t size() const { return trials.size(); }
    bool all_binary() const;
    /// All trials share one frame and one focal assignment.
    bool equidistributed() const;
    ProductFramePtr product(std::size_t cap = kDefaultProductCap) const;
};

/// A tuple of singleton outcomes, one per trial.
struct SharpSample {
    std::vector<std::string> outcomes;

    /// Parses a comma-separated outcome list, e.g. "T,T,F".
    static SharpSample parse(std::string_view text);
    /// The same outcome label repeated n times.
    static SharpSample constant(std::string label, std::size_t n);
};

struct LikelihoodPair {
    double lower = 0.0;
    double upper = 0.0;
};

/// A factorized plausibility value, flagged when it rests on the
/// conjectured (unproven) product decomposition.
struct UpperLikelihood {
    double value = 0.0;
    bool conjecture_based = true;
};

/// Belief of `event` under combine_many(model): the ground-truth oracle for
/// every factorized path below.
double belief_likelihood_bruteforce(const TrialModel& model, const ProductSubset& event,
                                    std::size_t cap = kDefaultProductCap);

/// Brute-force lower/upper likelihood of a sharp sample.
LikelihoodPair likelihood_bruteforce_sharp(const TrialModel& model, const SharpSample& sample,
                                           std::size_t cap = kDefaultProductCap);

/// Product of per-trial singleton beliefs. Valid for conjunctive/Dempster
/// combination on arbitrary finite frames; rejects disjunctive models.
double lower_likelihood_sharp(const TrialModel& model, const SharpSample& sample);

/// Product of per-trial singleton plausibilities. Conjunctive/Dempster,
/// binary frames only; conjecture_based is false exactly on the proven
/// sub-cases (all-Bayesian trials, or equidistributed trials with a
/// constant sample).
UpperLikelihood upper_likelihood_sharp(const TrialModel& model, const SharpSample& sample);

/// Product of per-trial component beliefs for a Cartesian box, one component
/// per trial. Conjunctive/Dempster, binary frames only.
double belief_likelihood_box(const TrialModel& model, std::span<const SubsetMask> box);

/// Under disjunctive combination: lower is the belief of the complement of
/// the sharp sample (a product of per-trial complement beliefs); the
/// plausibility of that complement is always 1. Binary frames only.
LikelihoodPair disjunctive_complement_likelihood(const TrialModel& model,
                                                 const SharpSample& sample);

/// Shape of the combined belief function's focal elements, compared against
/// the predicted product structure.
struct FocalStructureReport {
    CombinationRule rule = CombinationRule::conjunctive;
    std::size_t trial_count = 0;
    std::size_t focal_count = 0;
    /// Count implied by the product structure of the inputs, when defined:
    /// conjunctive -> product of per-trial focal counts; disjunctive on
    /// binary frames -> positive tuple-complement masses plus the full
    /// product when its residual mass is positive.
    std::optional<std::size_t> predicted_count;
    bool all_boxes = false;
    bool all_tuple_complements_or_full = false;
    /// Max |actual - predicted| focal mass over elements with a prediction.
    double max_mass_deviation = 0.0;
};

FocalStructureReport enumerate_focal_structure(const TrialModel& model,
                                               std::size_t cap = kDefaultProductCap);

/// One factorization claim checked against the brute-force oracle.
struct ClaimCheck {
    std::string claim;
    bool proven = false;  ///< false marks the conjectured decomposition
    double max_discrepancy = 0.0;
    std::size_t checks = 0;
};

/// A sampled model/sample pair where the conjectured decomposition missed
/// the oracle by more than the tolerance.
struct ConjectureCounterexample {
    std::vector<std::array<double, 3>> trial_masses;  ///< (p, q, r) per trial
    std::vector<std::string> sample;
    double factorized = 0.0;
    double bruteforce = 0.0;
};

struct FactorizationReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double tolerance = kFactorizationTolerance;
    std::vector<ClaimCheck> claims;
    std::optional<ConjectureCounterexample> conjecture_counterexample;

    bool proven_claims_ok() const;
};

/// Samples `trials` random full-support binary models of n trials each and
/// compares every factorized path against the brute-force oracle over all
/// sharp samples (and all boxes). The conjectured upper decomposition is
/// measured, never asserted; its equidistributed constant-sample sub-case is
/// checked as proven.
FactorizationReport verify_factorization(std::size_t n, std::size_t trials, std::uint64_t seed,
                                         std::size_t cap = kDefaultProductCap,
                                         double tolerance = kFactorizationTolerance);

}  // namespace bellik

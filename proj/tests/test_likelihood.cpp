#include <doctest.h>

#include <random>

#include "bellik/errors.hpp"
#include "bellik/likelihood.hpp"
#include "test_support.hpp"

using namespace bellik;
using namespace bellik::testing;

namespace {

TrialModel equal_trials(std::size_t n, double p, double q,
                        CombinationRule rule = CombinationRule::conjunctive) {
    TrialModel model;
    model.rule = rule;
    model.trials.assign(n, bernoulli_mass(p, q));
    return model;
}

}  // namespace

TEST_CASE("brute-force likelihood is the belief of the event under combine_many") {
    auto model = equal_trials(2, 0.5, 0.3);
    auto product = model.product();

    const std::vector<std::string> tt{"T", "T"};
    CHECK_CLOSE(belief_likelihood_bruteforce(model, ProductSubset::singleton_tuple(product, tt)),
                0.25, 1e-15);

    TrialModel single = equal_trials(1, 0.5, 0.3);
    auto product1 = single.product();
    const std::vector<std::string> just_t{"T"};
    CHECK_CLOSE(
        belief_likelihood_bruteforce(single, ProductSubset::singleton_tuple(product1, just_t)),
        0.5, 1e-15);

    auto disj = equal_trials(2, 0.5, 0.3, CombinationRule::disjunctive);
    CHECK_CLOSE(belief_likelihood_bruteforce(
                    disj, ProductSubset::singleton_tuple(product, tt).complement()),
                0.09, 1e-15);
}

TEST_CASE("sharp lower likelihood is the product of singleton beliefs") {
    auto model = equal_trials(3, 0.5, 0.3);
    CHECK_CLOSE(lower_likelihood_sharp(model, SharpSample::parse("T,T,F")), 0.075, 1e-15);

    // a vanishing singleton mass zeroes the product
    TrialModel with_zero;
    with_zero.trials = {bernoulli_mass(0.0, 0.3), bernoulli_mass(0.5, 0.3)};
    CHECK(lower_likelihood_sharp(with_zero, SharpSample::parse("T,T")) == 0.0);

    // general (non-binary) frames factorize the same way
    auto t3 = ternary_frame();
    TrialModel ternary;
    ternary.trials = {make_mass(t3, {{SubsetMask::singleton(t3, "a"), 0.4},
                                     {SubsetMask::singleton(t3, "b"), 0.3},
                                     {SubsetMask::full(t3), 0.3}}),
                      make_mass(t3, {{SubsetMask::singleton(t3, "b"), 0.2},
                                     {SubsetMask::singleton(t3, "c"), 0.5},
                                     {SubsetMask::of(t3, {"a", "b"}), 0.3}})};
    auto sample = SharpSample::parse("a,b");
    CHECK_CLOSE(lower_likelihood_sharp(ternary, sample), 0.08, 1e-15);
    auto product = ternary.product();
    CHECK_CLOSE(belief_likelihood_bruteforce(
                    ternary, ProductSubset::singleton_tuple(product, sample.outcomes)),
                0.08, 1e-13);

    auto disj = equal_trials(2, 0.5, 0.3, CombinationRule::disjunctive);
    CHECK_THROWS_AS((void)lower_likelihood_sharp(disj, SharpSample::parse("T,T")),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)lower_likelihood_sharp(model, SharpSample::parse("T,T")),
                    std::invalid_argument);  // arity mismatch
}

TEST_CASE("sharp upper likelihood multiplies singleton plausibilities") {
    auto model = equal_trials(2, 0.5, 0.3);
    auto upper = upper_likelihood_sharp(model, SharpSample::parse("T,T"));
    CHECK_CLOSE(upper.value, 0.49, 1e-15);

    // oracle route: plausibility of the sharp singleton on the product frame
    auto pair = likelihood_bruteforce_sharp(model, SharpSample::parse("T,T"));
    CHECK_CLOSE(pair.upper, 0.49, 1e-13);
    CHECK(pair.lower <= pair.upper);

    // equidistributed constant samples are the proven sub-case
    for (std::size_t n = 1; n <= 8; ++n) {
        auto equi = equal_trials(n, 0.5, 0.3);
        auto value = upper_likelihood_sharp(equi, SharpSample::constant("T", n));
        CHECK_FALSE(value.conjecture_based);
        CHECK_CLOSE(value.value, std::pow(0.7, static_cast<double>(n)), 1e-15);
    }

    // the constant sample on equal trials is proven; unequal trials or
    // mixed samples rest on the conjectured decomposition
    CHECK_FALSE(upper.conjecture_based);
    auto mixed = upper_likelihood_sharp(equal_trials(2, 0.5, 0.3), SharpSample::parse("T,F"));
    CHECK(mixed.conjecture_based);
    TrialModel unequal;
    unequal.trials = {bernoulli_mass(0.5, 0.3), bernoulli_mass(0.4, 0.3)};
    CHECK(upper_likelihood_sharp(unequal, SharpSample::parse("T,T")).conjecture_based);

    // bayesian trials make upper and lower coincide, provenly
    TrialModel bayes;
    bayes.trials = {bernoulli_mass(0.6, 0.4), bernoulli_mass(0.3, 0.7)};
    auto upper_b = upper_likelihood_sharp(bayes, SharpSample::parse("T,F"));
    CHECK_FALSE(upper_b.conjecture_based);
    CHECK_CLOSE(upper_b.value, lower_likelihood_sharp(bayes, SharpSample::parse("T,F")), 1e-15);

    // the factorized path refuses frames where the decomposition is unstated
    auto t3 = ternary_frame();
    TrialModel ternary;
    ternary.trials = {make_mass(t3, {{SubsetMask::singleton(t3, "a"), 1.0}})};
    CHECK_THROWS_AS((void)upper_likelihood_sharp(ternary, SharpSample::parse("a")),
                    std::invalid_argument);
}

TEST_CASE("box likelihood multiplies component beliefs on binary frames") {
    auto tf = binary_frame();
    auto model2 = equal_trials(2, 0.5, 0.3);
    std::vector<SubsetMask> box{SubsetMask::singleton(tf, "T"), SubsetMask::full(tf)};
    CHECK_CLOSE(belief_likelihood_box(model2, box), 0.5, 1e-15);

    std::vector<SubsetMask> full_box{SubsetMask::full(tf), SubsetMask::full(tf)};
    CHECK(belief_likelihood_box(model2, full_box) == 1.0);

    auto model3 = equal_trials(3, 0.5, 0.3);
    std::vector<SubsetMask> mixed{SubsetMask::singleton(tf, "T"), SubsetMask::singleton(tf, "F"),
                                  SubsetMask::full(tf)};
    CHECK_CLOSE(belief_likelihood_box(model3, mixed), 0.15, 1e-15);
    auto product = model3.product();
    CHECK_CLOSE(
        belief_likelihood_bruteforce(model3, BoxSubset(product, mixed).to_subset()), 0.15,
        1e-13);

    auto t3 = ternary_frame();
    TrialModel ternary;
    ternary.trials = {make_mass(t3, {{SubsetMask::full(t3), 1.0}})};
    std::vector<SubsetMask> tbox{SubsetMask::full(t3)};
    CHECK_THROWS_AS((void)belief_likelihood_box(ternary, tbox), std::invalid_argument);
}

TEST_CASE("disjunctive complement likelihood: complement beliefs multiply, plausibility is 1") {
    auto disj2 = equal_trials(2, 0.5, 0.3, CombinationRule::disjunctive);

    auto tt = disjunctive_complement_likelihood(disj2, SharpSample::parse("T,T"));
    CHECK_CLOSE(tt.lower, 0.09, 1e-15);
    CHECK(tt.upper == 1.0);

    auto ff = disjunctive_complement_likelihood(disj2, SharpSample::parse("F,F"));
    CHECK_CLOSE(ff.lower, 0.25, 1e-15);

    TrialModel with_zero;
    with_zero.rule = CombinationRule::disjunctive;
    with_zero.trials = {bernoulli_mass(0.5, 0.0), bernoulli_mass(0.5, 0.3)};
    CHECK(disjunctive_complement_likelihood(with_zero, SharpSample::parse("T,T")).lower == 0.0);

    // oracle agreement including the plausibility-one claim
    auto product = disj2.product();
    auto combined = combine_many(disj2.trials, disj2.rule);
    for (std::size_t idx = 0; idx < product->size(); ++idx) {
        auto complement = ProductSubset::singleton_index(product, idx).complement();
        SharpSample sample{product->index_tuple(idx)};
        auto pair = disjunctive_complement_likelihood(disj2, sample);
        CHECK_CLOSE(pair.lower, combined.belief(complement), 1e-13);
        CHECK_CLOSE(combined.plausibility(complement), 1.0, 1e-13);
    }
}

TEST_CASE("factorized paths match the brute-force oracle on random models") {
    std::mt19937_64 gen(4242);
    for (std::size_t n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 15; ++trial) {
            TrialModel model;
            model.rule = trial % 2 == 0 ? CombinationRule::conjunctive
                                        : CombinationRule::dempster;
            for (std::size_t i = 0; i < n; ++i) {
                model.trials.push_back(random_bernoulli_mass(gen));
            }
            auto combined = combine_many(model.trials, model.rule);
            auto product = combined.domain();
            for (std::size_t idx = 0; idx < product->size(); ++idx) {
                SharpSample sample{product->index_tuple(idx)};
                auto event = ProductSubset::singleton_index(product, idx);
                CHECK_CLOSE(lower_likelihood_sharp(model, sample), combined.belief(event),
                            1e-12);
                CHECK_CLOSE(upper_likelihood_sharp(model, sample).value,
                            combined.plausibility(event), 1e-12);
            }
        }
    }
}

TEST_CASE("focal structure report: counts, shapes, and product masses") {
    std::mt19937_64 gen(1702);

    auto conj = equal_trials(4, 0.5, 0.3);
    auto conj_report = enumerate_focal_structure(conj);
    CHECK(conj_report.focal_count == 81);
    CHECK(conj_report.predicted_count == 81);
    CHECK(conj_report.all_boxes);
    CHECK(conj_report.max_mass_deviation < 1e-12);

    auto disj = equal_trials(4, 0.5, 0.3, CombinationRule::disjunctive);
    auto disj_report = enumerate_focal_structure(disj);
    CHECK(disj_report.focal_count == 17);
    CHECK(disj_report.predicted_count == 17);
    CHECK(disj_report.all_tuple_complements_or_full);
    CHECK(disj_report.max_mass_deviation < 1e-12);

    // mixed-support general frames: focal count multiplies
    auto tf = binary_frame();
    auto t3 = ternary_frame();
    TrialModel mixed;
    mixed.trials = {make_mass(tf, {{SubsetMask::singleton(tf, "T"), 0.4},
                                   {SubsetMask::full(tf), 0.6}}),
                    make_mass(t3, {{SubsetMask::singleton(t3, "a"), 0.2},
                                   {SubsetMask::of(t3, {"a", "b"}), 0.3},
                                   {SubsetMask::full(t3), 0.5}})};
    auto mixed_report = enumerate_focal_structure(mixed);
    CHECK(mixed_report.focal_count == 6);
    CHECK(mixed_report.predicted_count == 6);
    CHECK(mixed_report.all_boxes);
    CHECK(mixed_report.max_mass_deviation < 1e-12);

    // degenerate inputs reduce counts; the report measures, never asserts
    TrialModel degenerate;
    degenerate.trials = {bernoulli_mass(1.0, 0.0), bernoulli_mass(0.5, 0.5)};
    auto degenerate_report = enumerate_focal_structure(degenerate);
    CHECK(degenerate_report.focal_count == 2);
    CHECK(degenerate_report.predicted_count == 2);
}

TEST_CASE("verify_factorization: proven claims hold, conjecture is only measured") {
    auto report = verify_factorization(3, 25, 7);
    REQUIRE(report.claims.size() == 6);
    CHECK(report.proven_claims_ok());

    bool saw_conjecture = false;
    for (const auto& claim : report.claims) {
        CHECK(claim.checks > 0);
        if (claim.proven) {
            CHECK(claim.max_discrepancy <= report.tolerance);
        } else {
            saw_conjecture = true;
        }
    }
    CHECK(saw_conjecture);

    // identical seeds reproduce the report bit for bit
    auto again = verify_factorization(3, 25, 7);
    for (std::size_t i = 0; i < report.claims.size(); ++i) {
        CHECK(report.claims[i].claim == again.claims[i].claim);
        CHECK(report.claims[i].max_discrepancy == again.claims[i].max_discrepancy);
    }

    CHECK_THROWS_AS((void)verify_factorization(25, 1, 0), SizeCapError);
}

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "bellik/bernoulli.hpp"
#include "test_support.hpp"

using namespace bellik;
using namespace bellik::testing;

TEST_CASE("closed-form likelihoods match the combined product-frame values") {
    const auto pair = bernoulli_likelihoods({0.5, 0.3}, {2, 3});
    CHECK_CLOSE(pair.lower, 0.075, 1e-15);
    CHECK_CLOSE(pair.upper, 0.245, 1e-15);
    CHECK(pair.lower <= pair.upper);

    // oracle: three equal trials, a sample with two successes
    TrialModel model;
    model.trials.assign(3, bernoulli_mass(0.5, 0.3));
    auto oracle = likelihood_bruteforce_sharp(model, SharpSample::parse("T,F,T"));
    CHECK_CLOSE(oracle.lower, pair.lower, 1e-13);
    CHECK_CLOSE(oracle.upper, pair.upper, 1e-13);
}

TEST_CASE("bayesian parameters reduce both likelihoods to the classical one") {
    for (std::size_t k = 0; k <= 5; ++k) {
        const double p = 0.37;
        const auto pair = bernoulli_likelihoods({p, 1.0 - p}, {k, 5});
        const double classical =
            std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(5 - k));
        CHECK_CLOSE(pair.lower, classical, 1e-15);
        CHECK_CLOSE(pair.upper, classical, 1e-15);
    }
}

TEST_CASE("the vacuous corner maximizes the upper likelihood") {
    const auto pair = bernoulli_likelihoods({0.0, 0.0}, {6, 10});
    CHECK(pair.lower == 0.0);
    CHECK(pair.upper == 1.0);

    const auto all_successes = bernoulli_likelihoods({0.0, 0.0}, {10, 10});
    CHECK(all_successes.lower == 0.0);  // p^k vanishes for k > 0
    CHECK(all_successes.upper == 1.0);
}

TEST_CASE("closed forms equal the factorized sharp values for any success placement") {
    std::mt19937_64 gen(64);
    for (int trial = 0; trial < 20; ++trial) {
        const auto masses = rng::simplex3(gen, 0.05);
        const BeliefParams params{masses[0], masses[1]};
        const std::size_t n = 2 + static_cast<std::size_t>(rng::uniform01(gen) * 5.0);

        TrialModel model;
        model.trials.assign(n, bernoulli_mass(params.p, params.q));

        // random success placement
        SharpSample sample;
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool success = rng::uniform01(gen) < 0.5;
            sample.outcomes.push_back(success ? "T" : "F");
            k += success ? 1 : 0;
        }
        const auto pair = bernoulli_likelihoods(params, {k, n});
        CHECK_CLOSE(pair.lower, lower_likelihood_sharp(model, sample), 1e-12);
        CHECK_CLOSE(pair.upper, upper_likelihood_sharp(model, sample).value, 1e-12);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)bernoulli_likelihoods({0.7, 0.5}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)bernoulli_likelihoods({-0.1, 0.5}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)bernoulli_likelihoods({0.5, 0.3}, {3, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)bernoulli_surface({6, 10}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bernoulli_surface({6, 10}, 0.7), std::invalid_argument);
}

TEST_CASE("surface grid: argmaxes and the classical section") {
    const auto surface = bernoulli_surface({6, 10}, 0.01);
    CHECK(surface.points.size() == 101 * 102 / 2);

    CHECK_CLOSE(surface.lower_argmax.p, 0.60, 1e-9);
    CHECK_CLOSE(surface.lower_argmax.q, 0.40, 1e-9);
    CHECK_CLOSE(surface.lower_argmax.lower, 0.0011943936, 1e-12);
    CHECK(surface.upper_argmax.p == 0.0);
    CHECK(surface.upper_argmax.q == 0.0);
    CHECK(surface.upper_argmax.upper == 1.0);

    // along p + q = 1 the lower surface is the classical likelihood
    for (const auto& point : surface.points) {
        if (point.p + point.q == 1.0) {
            CHECK_CLOSE(point.lower, std::pow(point.p, 6.0) * std::pow(1.0 - point.p, 4.0),
                        1e-12);
        }
    }

    // all-failure sample: the lower surface peaks at the q corner
    const auto zero = bernoulli_surface({0, 5}, 0.01);
    CHECK(zero.lower_argmax.p == 0.0);
    CHECK_CLOSE(zero.lower_argmax.q, 1.0, 1e-9);
    CHECK(zero.upper_argmax.p == 0.0);
    CHECK(zero.upper_argmax.q == 0.0);
}

TEST_CASE("the segment joining the two argmaxes preserves the count ratio") {
    // (t*k/n, t*(n-k)/n) has p : q = k : (n-k); checked in integer arithmetic
    const std::int64_t k = 6;
    const std::int64_t n = 10;
    for (std::int64_t numerator = 1; numerator <= 100; ++numerator) {
        // t = numerator / 100; p = t*k/n and q = t*(n-k)/n as exact rationals
        const std::int64_t p_num = numerator * k;         // over denominator 100*n
        const std::int64_t q_num = numerator * (n - k);   // over the same denominator
        CHECK(p_num * (n - k) == q_num * k);
    }

    // the endpoints are the two grid argmaxes
    const auto surface = bernoulli_surface({6, 10}, 0.01);
    CHECK_CLOSE(surface.lower_argmax.p, 6.0 / 10.0, 1e-9);   // t = 1
    CHECK_CLOSE(surface.lower_argmax.q, 4.0 / 10.0, 1e-9);
    CHECK(surface.upper_argmax.p == 0.0);                    // t -> 0
    CHECK(surface.upper_argmax.q == 0.0);
}

TEST_CASE("every returned likelihood pair is ordered") {
    std::mt19937_64 gen(1123);
    for (int trial = 0; trial < 200; ++trial) {
        const auto masses = rng::simplex3(gen);
        const std::size_t n = 1 + static_cast<std::size_t>(rng::uniform01(gen) * 10.0);
        const auto k = static_cast<std::size_t>(rng::uniform01(gen) * static_cast<double>(n + 1));
        const auto pair = bernoulli_likelihoods({masses[0], masses[1]}, {std::min(k, n), n});
        CHECK(pair.lower <= pair.upper + 1e-15);
    }
}

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bellik/mass.hpp"
#include "bellik/random.hpp"

#define CHECK_CLOSE(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_CLOSE(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace bellik::testing {

inline FramePtr binary_frame() {
    static FramePtr frame = Frame::make({"T", "F"});
    return frame;
}

inline FramePtr ternary_frame() {
    static FramePtr frame = Frame::make({"a", "b", "c"});
    return frame;
}

/// Binary-trial mass (p, q, 1-p-q); zero entries are dropped by make_mass.
inline MassFunction bernoulli_mass(double p, double q) {
    auto frame = binary_frame();
    const double r = std::max(0.0, 1.0 - p - q);  // shave rounding dust
    return make_mass(frame, {{SubsetMask::singleton(frame, "T"), p},
                             {SubsetMask::singleton(frame, "F"), q},
                             {SubsetMask::full(frame), r}});
}

/// Random mass over a random nonempty support of nonempty subsets, every
/// focal mass at least min_mass.
inline MassFunction random_mass(const FramePtr& frame, std::mt19937_64& gen,
                                double min_mass = 0.01) {
    const std::uint32_t all = (1u << frame->size()) - 1u;
    std::vector<std::uint32_t> support;
    for (std::uint32_t bits = 1; bits <= all; ++bits) {
        if (rng::uniform01(gen) < 0.5) {
            support.push_back(bits);
        }
    }
    if (support.empty()) {
        const auto pick = static_cast<std::uint32_t>(rng::uniform01(gen) * all);
        support.push_back(1u + std::min(pick, all - 1u));
    }
    std::vector<double> weights(support.size());
    double total = 0.0;
    for (auto& w : weights) {
        w = -std::log(1.0 - rng::uniform01(gen));
        total += w;
    }
    const double free_mass = 1.0 - min_mass * static_cast<double>(support.size());
    std::vector<std::pair<SubsetMask, double>> assignments;
    for (std::size_t i = 0; i < support.size(); ++i) {
        assignments.emplace_back(SubsetMask(frame, support[i]),
                                 min_mass + free_mass * weights[i] / total);
    }
    return MassFunction::make(frame, std::move(assignments));
}

/// Full-support binary mass with all three masses >= floor.
inline MassFunction random_bernoulli_mass(std::mt19937_64& gen, double floor = 0.05) {
    const auto m = rng::simplex3(gen, floor);
    return bernoulli_mass(m[0], m[1]);
}

}  // namespace bellik::testing

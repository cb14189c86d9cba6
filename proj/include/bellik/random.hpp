#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace bellik::rng {

/// Uniform double in [0,1) from the engine's raw 64-bit output. The mt19937_64
/// sequence is pinned by the standard, so values are identical across
/// platforms (std::uniform_real_distribution is not).
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

/// A point of the 3-simplex with every coordinate >= floor.
/// Dirichlet(1,1,1) via normalized exponentials, rescaled onto the
/// floor-shrunk simplex.
inline std::array<double, 3> simplex3(std::mt19937_64& gen, double floor = 0.0) {
    std::array<double, 3> e{};
    double sum = 0.0;
    for (auto& v : e) {
        v = -std::log(1.0 - uniform01(gen));
        sum += v;
    }
    const double free_mass = 1.0 - 3.0 * floor;
    for (auto& v : e) {
        v = floor + free_mass * (v / sum);
    }
    return e;
}

}  // namespace bellik::rng

#pragma once

// Portable deterministic helpers. The standard distributions are
// implementation-defined, so seeded outputs would differ between toolchains.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace slackfuzz::detail {

using Engine = std::mt19937_64;

inline double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double standard_normal(Engine& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0.0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <typename T>
void shuffle(std::vector<T>& v, Engine& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace slackfuzz::detail

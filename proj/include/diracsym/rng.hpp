#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "matrix.hpp"

namespace dsym {

// Counter-based generator: value k of stream `seed` is a splitmix64 hash of (seed, k).
// Reproducible independent of call order across streams.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t next() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Vec3 normal3(double scale = 1.0) { return {scale * normal(), scale * normal(), scale * normal()}; }
    Vec3 uniform3(double a, double b) { return {uniform(a, b), uniform(a, b), uniform(a, b)}; }

    std::uint64_t counter() const { return counter_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace dsym

#pragma once

#include <cstdint>

#include "clusterlab/geometry.hpp"

namespace clusterlab {

// Reproducible 64-bit generator. std::uniform_real_distribution is
// implementation-defined, which would break the byte-identical report
// contract, so all sampling goes through this.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed = 0x9E3779B97F4A7C15ULL) : state(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    Point2 point_in(const Rect& r) {
        return {uniform(r.xmin, r.xmax), uniform(r.ymin, r.ymax)};
    }

    Vec2 unit_vector() {
        double a = uniform(0.0, 2.0 * M_PI);
        return {std::cos(a), std::sin(a)};
    }
};

}  // namespace clusterlab

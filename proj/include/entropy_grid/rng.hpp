#pragma once

// Deterministic seeded randomness. Every random draw in the library goes
// through SplitMix64 so that identical (parameters, seed) produce identical
// artifacts bit-for-bit on every platform.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace entropy_grid {

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Counter-based 64-bit generator (SplitMix64). State advances by a fixed
// odd constant; output is a bijective mix of the state, so distinct seeds
// give independent-looking streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53 random mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a logarithm argument.
    double next_unit_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * next_unit(); }

    // Standard normal via Box-Muller. Values are produced in pairs; the
    // spare is cached, so draw order is part of the deterministic stream.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit_open();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Labeled sub-seed derivation: one user-facing seed fans out into
// independent streams for shells, trials, etc. without overlap.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
    SplitMix64 g((seed ^ fnv1a64(label)) + 0x9E3779B97F4A7C15ULL * index);
    return g.next();
}

} // namespace entropy_grid

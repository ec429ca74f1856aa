#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace perturb {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seeded 64-bit stream. Child sources are keyed by (seed, index) through
// splitmix64 so parallel trials never share state.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    RandomSource child(std::uint64_t index) const {
        return RandomSource(splitmix64(seed_ ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
    }

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound), bound > 0. Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 prod = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(prod);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                prod = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(prod);
            }
        }
        return static_cast<std::uint64_t>(prod >> 64);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace perturb

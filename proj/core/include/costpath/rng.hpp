#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace costpath {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seedable random source with positional substreams. Every (seed, stream)
// pair yields an independent, reproducible sequence, so work can be split
// per observation, per replicate or per fold without the schedule ever
// changing the draws. Built on mt19937_64, whose output is fixed by the
// standard; normals use an explicit Box-Muller transform rather than
// std::normal_distribution, which is implementation defined.
class SubstreamRng {
public:
    explicit SubstreamRng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Uniform integer in [0, m) via rejection; unbiased and portable.
    std::uint64_t bounded(std::uint64_t m) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % m;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace costpath

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace speclust {

/// One SplitMix64 step. Used for seed mixing and stream derivation so that
/// parallel runs get independent, schedule-free streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stream id for (seed, beta index, replicate). Pre-split at plan time.
inline std::uint64_t derive_stream(std::uint64_t seed, int beta_index, int replicate) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s = h ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(beta_index + 1));
    h = splitmix64(s);
    s = h ^ (0xC2B2AE3D27D4EB4FULL * static_cast<std::uint64_t>(replicate + 1));
    return splitmix64(s);
}

/// Seedable random stream. The engine is std::mt19937_64 (bit-exact by the
/// standard); uniforms and normals are derived here rather than through
/// std distributions so that sequences are pinned across platforms.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    int uniform_int(int n) {
        return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
    }

    /// Standard normal via Box-Muller. No caching, so call order alone
    /// determines the sequence.
    double normal() {
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    RngStream split() { return RngStream(engine_()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace speclust

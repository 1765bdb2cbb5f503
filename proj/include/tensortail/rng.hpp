#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tensortail {

/// Counter-based stream generator. A stream is identified by (seed, stream_id);
/// output word i is the SplitMix64 finalizer applied to
/// key(seed, stream_id) + i * 0x9E3779B97F4A7C15, so draws are a pure function
/// of (seed, stream_id, counter) and stable across platforms. Distinct stream
/// ids give statistically independent streams.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(mix(mix(seed + GOLDEN) ^ mix(stream_id + 0x7F4A7C15ULL))) {}

    std::uint64_t next_u64() { return mix(key_ + (counter_++) * GOLDEN); }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// +1 or -1 with equal probability.
    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

    /// Standard normal via Box-Muller; two uniforms per call, no caching, so
    /// the draw count per call is fixed.
    double next_normal() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Composes a 2-level stream id so per-trial sub-streams never collide.
inline RngStream make_stream(std::uint64_t seed, std::uint64_t major, std::uint64_t minor = 0) {
    return {seed, (major << 8) ^ minor ^ (major >> 56)};
}

}  // namespace tensortail

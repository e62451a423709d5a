#pragma once

#include <cstdint>
#include <string_view>

namespace polyframe {

/// Counter-based 64-bit generator (splitmix64 finalizer over a Weyl
/// sequence).  The entire stream is a pure function of the seed, so
/// sample sets replay bit-for-bit across platforms and languages.
class SplitMix64 {
public:
    static constexpr std::string_view algorithm = "splitmix64";

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Per-trial stream split: trial k of a run seeded with s draws from
/// stream s ^ k.  The splitmix finalizer decorrelates nearby seeds.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t trial) {
    return seed ^ trial;
}

} // namespace polyframe

#pragma once

#include <cstdint>

namespace memchaos {

// SplitMix64: deterministic auxiliary generator for samplers and test
// fixtures. Bit-portable across platforms, unlike the standard library's
// distributions. Not part of the cipher; keystream bytes never come from
// here.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound), bound >= 1, by rejection.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= reject) return r % bound;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() noexcept { return double(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace memchaos

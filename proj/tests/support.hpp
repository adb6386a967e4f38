#pragma once

// Shared fixtures and independent oracles. Oracles deliberately use a
// different mechanism than the code under test (integer arithmetic for
// float rounding, finite differences for analytic Jacobians) so both
// sides failing together is unlikely.

#include <cmath>
#include <cstdint>
#include <vector>

#include "memchaos/image.hpp"
#include "memchaos/prng.hpp"
#include "memchaos/system.hpp"

namespace testsupport {

// Natural-image stand-in: smooth sinusoid mixture plus small seeded
// noise, clamped to [0, 255]. Smoothness gives the high adjacent-pixel
// correlation and mid-range entropy a photograph would have.
inline memchaos::Image make_test_image(std::uint32_t width, std::uint32_t height,
                                       std::uint64_t seed = 42) {
    memchaos::Image img;
    img.width = width;
    img.height = height;
    img.pixels.resize(3 * static_cast<std::size_t>(width) * height);
    memchaos::SplitMix64 rng(seed);
    for (std::uint32_t r = 0; r < height; ++r) {
        for (std::uint32_t c = 0; c < width; ++c) {
            const double x = static_cast<double>(c) / 37.0;
            const double y = static_cast<double>(r) / 29.0;
            const double base[3] = {
                127.0 + 70.0 * std::sin(x) * std::cos(y) + 40.0 * std::sin(0.3 * (x + y)),
                127.0 + 80.0 * std::cos(0.8 * x) * std::sin(0.6 * y),
                127.0 + 60.0 * std::sin(0.5 * x + 1.0) + 50.0 * std::cos(0.4 * y),
            };
            for (int ch = 0; ch < 3; ++ch) {
                const double noise =
                    static_cast<double>(rng.next_below(13)) - 6.0;  // +/-6
                double v = base[ch] + noise;
                v = v < 0.0 ? 0.0 : v > 255.0 ? 255.0 : v;
                const std::size_t i =
                    3 * (static_cast<std::size_t>(r) * width + c) + static_cast<std::size_t>(ch);
                img.pixels[i] = static_cast<std::uint8_t>(v + 0.5);
            }
        }
    }
    return img;
}

// Round-to-nearest-even IEEE double product of two non-negative finite
// doubles, computed with integer arithmetic (exact 106-bit product, then
// one explicit rounding). Independent cross-check for expressions of the
// form a*b evaluated in hardware floating point.
inline double mul_round_nearest(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    int ea, eb;
    const double ma = std::frexp(a, &ea);
    const double mb = std::frexp(b, &eb);
    const auto ia = static_cast<unsigned long long>(std::ldexp(ma, 53));
    const auto ib = static_cast<unsigned long long>(std::ldexp(mb, 53));
    unsigned __int128 prod = static_cast<unsigned __int128>(ia) * ib;
    int exponent = ea + eb - 106;
    int bits = 0;
    for (unsigned __int128 t = prod; t != 0; t >>= 1) ++bits;
    const int shift = bits - 53;
    if (shift > 0) {
        const unsigned __int128 one = 1;
        const unsigned __int128 rem = prod & ((one << shift) - 1);
        const unsigned __int128 half = one << (shift - 1);
        prod >>= shift;
        exponent += shift;
        if (rem > half || (rem == half && (prod & 1) != 0)) {
            ++prod;  // may carry to 54 bits; ldexp absorbs it exactly
        }
    }
    return std::ldexp(static_cast<double>(prod), exponent);
}

// floor(y) mod 256 for a non-negative finite double, again via exact
// integer decomposition rather than fmod.
inline std::uint8_t floor_mod256(double y) {
    if (y < 1.0) return 0;
    int e;
    const double m = std::frexp(y, &e);
    const auto im = static_cast<unsigned long long>(std::ldexp(m, 53));  // y = im*2^(e-53)
    const int shift = e - 53;
    if (shift >= 8) return 0;
    if (shift >= 0) return static_cast<std::uint8_t>((im << shift) & 255u);
    return static_cast<std::uint8_t>((im >> (-shift)) & 255u);
}

// Full keystream-quantizer oracle: the per-dimension scale constants are
// restated here on purpose so a typo in either copy shows up.
inline std::uint8_t quantize_oracle(double x, std::size_t dim) {
    static const double kScale[7] = {
        1.0,
        std::sqrt(2.0),
        std::sqrt(3.0),
        std::sqrt(5.0),
        std::sqrt(6.0),
        std::sqrt(7.0),
        std::sqrt(10.0),
    };
    const double scaled = mul_round_nearest(std::fabs(x), kScale[dim]);
    return floor_mod256(mul_round_nearest(scaled, 1e10));
}

// Central-difference Jacobian of the flow, h = 1e-6.
inline memchaos::Matrix7 fd_jacobian(const memchaos::State7& s,
                                     const memchaos::SystemParams& p) {
    const double h = 1e-6;
    memchaos::Matrix7 j{};
    for (std::size_t col = 0; col < memchaos::kDim; ++col) {
        memchaos::State7 plus = s, minus = s;
        plus[col] += h;
        minus[col] -= h;
        const memchaos::State7 fp = memchaos::vector_field(plus, p);
        const memchaos::State7 fm = memchaos::vector_field(minus, p);
        for (std::size_t row = 0; row < memchaos::kDim; ++row) {
            j[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    return j;
}

// |a-b| <= tol * max(1, |a|, |b|).
inline bool close_rel(double a, double b, double tol) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

// Uniform doubles in [lo, hi] for randomized sweeps.
inline std::vector<double> uniform_doubles(std::size_t count, double lo, double hi,
                                           std::uint64_t seed) {
    memchaos::SplitMix64 rng(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = lo + (hi - lo) * rng.next_double();
    return out;
}

}  // namespace testsupport

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "memchaos/image.hpp"
#include "memchaos/keystream.hpp"

namespace memchaos::metrics {

// 10*log10(255^2 / MSE) is the standard decibel form. The alternate
// form 20*log10(255 / MSE) omits the square root and is provided only
// for compatibility with sources using that convention.
enum class PsnrMode { standard, alternate };

// Single-window structural similarity constants; all must be positive.
struct SsimConfig {
    double c1;
    double c2;
    double c3;

    // c1=(0.01*255)^2, c2=(0.03*255)^2, c3=c2/2: the field-standard set.
    static SsimConfig standard();
    // Variant pairing c3 with the luminance constant (c3=c1/2), for
    // compatibility with sources using that convention.
    static SsimConfig compat();
};

void validate(const SsimConfig& cfg);

enum class Direction { horizontal, vertical, diagonal };

// (1/n) * sum (f_i - g_i)^2 over byte planes of equal size.
double mse(const std::vector<std::uint8_t>& f, const std::vector<std::uint8_t>& g);

// MSE of 0 returns +infinity.
double psnr(const std::vector<std::uint8_t>& f, const std::vector<std::uint8_t>& g,
            PsnrMode mode = PsnrMode::standard);

// Whole-plane single-window SSIM: the product of luminance, contrast,
// and structure terms computed from plane-wide means, population
// variances, and covariance.
double ssim(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y,
            const SsimConfig& cfg = SsimConfig::standard());

// Exact count of each byte value.
std::array<std::uint64_t, 256> histogram(const std::vector<std::uint8_t>& plane);

// Flatness statistic sum (obs - exp)^2 / exp with exp = n/256; under
// uniformity, chi-square with 255 degrees of freedom (critical value
// 310.46 at the 1% level).
double chi_square_flatness(const std::vector<std::uint8_t>& plane);

// Pearson correlation of n_pairs randomly positioned pixels with their
// neighbor one step in the given direction (population moments). The
// sampler is a private seeded generator, deliberately independent of the
// cipher keystream. Throws NumericError when either margin has zero
// variance, DomainError when the plane cannot host a pair.
double adjacent_correlation(const std::vector<std::uint8_t>& plane, std::uint32_t width,
                            std::uint32_t height, Direction dir, std::uint32_t n_pairs,
                            std::uint64_t seed);

// -sum p log2 p over the 256 byte values; empty bins contribute zero;
// maximum 8 bits.
double shannon_entropy(const std::vector<std::uint8_t>& plane);

// Channel-indexed summary of everything above. correlation[ch][k] holds
// the horizontal (k=0), vertical (k=1), diagonal (k=2) coefficient for
// channel ch. With a reference image, psnr pools the squared error of
// all three channels and ssim averages the per-channel values;
// otherwise has_reference stays false and both keep their identity
// sentinels.
struct MetricsReport {
    std::array<double, 3> entropy{};
    std::array<std::array<double, 3>, 3> correlation{};
    std::array<std::array<std::uint64_t, 256>, 3> histogram{};
    std::array<double, 3> chi_square{};
    double psnr = std::numeric_limits<double>::infinity();
    double ssim = 1.0;
    bool has_reference = false;
};

MetricsReport image_metrics(const Image& img, const Image* reference = nullptr,
                            std::uint32_t n_pairs = 8000,
                            std::uint64_t seed = 0x07dccu);

// One row of the key-sensitivity experiment: decrypting with a single
// key component nudged by +epsilon.
struct KeySensitivityEntry {
    std::string component;  // x1..x7, alpha, beta, r, d, a, b
    double diff_fraction;   // bytes differing from the true plaintext
    double correlation;     // wrong decryption vs plaintext, bytes pooled
    double entropy;         // minimum channel entropy of the wrong decryption
};

// Encrypts img once with key, then decrypts 13 times, each time adding
// epsilon to one key component. epsilon = 0 demonstrates exact recovery.
std::vector<KeySensitivityEntry> key_sensitivity_report(const Image& img,
                                                        const Key& key, double epsilon);

}  // namespace memchaos::metrics

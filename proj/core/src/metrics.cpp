#include "memchaos/metrics.hpp"

#include <cmath>

#include "memchaos/cipher.hpp"
#include "memchaos/error.hpp"
#include "memchaos/prng.hpp"

namespace memchaos::metrics {

namespace {

void require_same_size(const std::vector<std::uint8_t>& f,
                       const std::vector<std::uint8_t>& g) {
    if (f.empty() || f.size() != g.size()) {
        throw DomainError("planes must be non-empty and equally sized");
    }
}

struct Moments {
    double mean_x, mean_y, var_x, var_y, cov;
};

Moments pair_moments(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    Moments m{0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        m.mean_x += x[i];
        m.mean_y += y[i];
    }
    m.mean_x /= n;
    m.mean_y /= n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - m.mean_x;
        const double dy = y[i] - m.mean_y;
        m.var_x += dx * dx;
        m.var_y += dy * dy;
        m.cov += dx * dy;
    }
    m.var_x /= n;
    m.var_y /= n;
    m.cov /= n;
    return m;
}

double pooled_correlation(const std::vector<std::uint8_t>& a,
                          const std::vector<std::uint8_t>& b) {
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    const Moments m = pair_moments(x, y);
    if (!(m.var_x > 0.0) || !(m.var_y > 0.0)) {
        throw NumericError("correlation undefined: zero variance");
    }
    return m.cov / std::sqrt(m.var_x * m.var_y);
}

}  // namespace

SsimConfig SsimConfig::standard() {
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    return SsimConfig{c1, c2, c2 / 2.0};
}

SsimConfig SsimConfig::compat() {
    SsimConfig cfg = standard();
    cfg.c3 = cfg.c1 / 2.0;
    return cfg;
}

void validate(const SsimConfig& cfg) {
    if (!(cfg.c1 > 0.0) || !(cfg.c2 > 0.0) || !(cfg.c3 > 0.0)) {
        throw DomainError("SSIM constants must be positive");
    }
}

double mse(const std::vector<std::uint8_t>& f, const std::vector<std::uint8_t>& g) {
    require_same_size(f, g);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = static_cast<double>(f[i]) - static_cast<double>(g[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(f.size());
}

double psnr(const std::vector<std::uint8_t>& f, const std::vector<std::uint8_t>& g,
            PsnrMode mode) {
    const double m = mse(f, g);
    if (m == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    if (mode == PsnrMode::standard) {
        return 10.0 * std::log10(255.0 * 255.0 / m);
    }
    return 20.0 * std::log10(255.0 / m);
}

double ssim(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y,
            const SsimConfig& cfg) {
    require_same_size(x, y);
    validate(cfg);
    std::vector<double> xv(x.begin(), x.end());
    std::vector<double> yv(y.begin(), y.end());
    const Moments m = pair_moments(xv, yv);
    const double sx = std::sqrt(m.var_x);
    const double sy = std::sqrt(m.var_y);
    const double lum = (2.0 * m.mean_x * m.mean_y + cfg.c1) /
                       (m.mean_x * m.mean_x + m.mean_y * m.mean_y + cfg.c1);
    const double con = (2.0 * sx * sy + cfg.c2) / (m.var_x + m.var_y + cfg.c2);
    const double str = (m.cov + cfg.c3) / (sx * sy + cfg.c3);
    return lum * con * str;
}

std::array<std::uint64_t, 256> histogram(const std::vector<std::uint8_t>& plane) {
    std::array<std::uint64_t, 256> counts{};
    for (std::uint8_t v : plane) {
        ++counts[v];
    }
    return counts;
}

double chi_square_flatness(const std::vector<std::uint8_t>& plane) {
    if (plane.empty()) {
        throw DomainError("flatness statistic needs a non-empty plane");
    }
    const auto counts = histogram(plane);
    const double expect = static_cast<double>(plane.size()) / 256.0;
    double chi = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expect;
        chi += d * d / expect;
    }
    return chi;
}

double adjacent_correlation(const std::vector<std::uint8_t>& plane, std::uint32_t width,
                            std::uint32_t height, Direction dir, std::uint32_t n_pairs,
                            std::uint64_t seed) {
    if (static_cast<std::size_t>(width) * height != plane.size() || plane.empty()) {
        throw DomainError("plane size must equal width*height");
    }
    if (n_pairs < 2) {
        throw DomainError("correlation needs at least 2 pairs");
    }
    const bool step_col = dir != Direction::vertical;
    const bool step_row = dir != Direction::horizontal;
    const std::uint64_t max_col = step_col ? width - 1 : width;
    const std::uint64_t max_row = step_row ? height - 1 : height;
    if (max_col == 0 || max_row == 0) {
        throw DomainError("plane too small for neighbor pairs in this direction");
    }
    SplitMix64 rng(seed);
    std::vector<double> u(n_pairs), v(n_pairs);
    for (std::uint32_t i = 0; i < n_pairs; ++i) {
        const std::uint64_t r = rng.next_below(max_row);
        const std::uint64_t c = rng.next_below(max_col);
        const std::uint64_t r2 = r + (step_row ? 1 : 0);
        const std::uint64_t c2 = c + (step_col ? 1 : 0);
        u[i] = plane[r * width + c];
        v[i] = plane[r2 * width + c2];
    }
    const Moments m = pair_moments(u, v);
    if (!(m.var_x > 0.0) || !(m.var_y > 0.0)) {
        throw NumericError("correlation undefined: sampled pixels have zero variance");
    }
    return m.cov / std::sqrt(m.var_x * m.var_y);
}

double shannon_entropy(const std::vector<std::uint8_t>& plane) {
    if (plane.empty()) {
        throw DomainError("entropy needs a non-empty plane");
    }
    const auto counts = histogram(plane);
    const auto total = static_cast<double>(plane.size());
    double h = 0.0;
    for (std::uint64_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

MetricsReport image_metrics(const Image& img, const Image* reference,
                            std::uint32_t n_pairs, std::uint64_t seed) {
    validate(img);
    MetricsReport report;
    for (int ch = 0; ch < 3; ++ch) {
        const auto plane = channel_plane(img, ch);
        const auto chs = static_cast<std::size_t>(ch);
        report.entropy[chs] = shannon_entropy(plane);
        report.histogram[chs] = histogram(plane);
        report.chi_square[chs] = chi_square_flatness(plane);
        const Direction dirs[] = {Direction::horizontal, Direction::vertical,
                                  Direction::diagonal};
        for (std::size_t k = 0; k < 3; ++k) {
            // Distinct seeds per (channel, direction) keep the samplers
            // independent while staying deterministic.
            report.correlation[chs][k] = adjacent_correlation(
                plane, img.width, img.height, dirs[k], n_pairs,
                seed + 31 * chs + 7 * k + 1);
        }
    }
    if (reference != nullptr) {
        validate(*reference);
        if (reference->width != img.width || reference->height != img.height) {
            throw DomainError("reference image dimensions must match");
        }
        report.has_reference = true;
        report.psnr = psnr(img.pixels, reference->pixels);
        double s = 0.0;
        for (int ch = 0; ch < 3; ++ch) {
            s += ssim(channel_plane(img, ch), channel_plane(*reference, ch));
        }
        report.ssim = s / 3.0;
    }
    return report;
}

std::vector<KeySensitivityEntry> key_sensitivity_report(const Image& img,
                                                        const Key& key,
                                                        double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("perturbation must be a finite non-negative number");
    }
    validate(img);
    const cipher::CipherEnvelope env = cipher::encrypt_image(img, key);

    static const char* kNames[13] = {"x1", "x2", "x3", "x4", "x5", "x6", "x7",
                                     "alpha", "beta", "r", "d", "a", "b"};
    std::vector<KeySensitivityEntry> report;
    report.reserve(13);
    for (int comp = 0; comp < 13; ++comp) {
        Key wrong = key;
        if (comp < 7) {
            wrong.init[static_cast<std::size_t>(comp)] += epsilon;
        } else {
            double* fields[] = {&wrong.params.alpha, &wrong.params.beta,
                                &wrong.params.r, &wrong.params.d, &wrong.params.a,
                                &wrong.params.b};
            *fields[comp - 7] += epsilon;
        }
        const Image guess = cipher::decrypt_image(env, wrong);
        std::size_t differing = 0;
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            if (guess.pixels[i] != img.pixels[i]) ++differing;
        }
        KeySensitivityEntry entry;
        entry.component = kNames[comp];
        entry.diff_fraction =
            static_cast<double>(differing) / static_cast<double>(img.pixels.size());
        entry.correlation =
            differing == 0 ? 1.0 : pooled_correlation(guess.pixels, img.pixels);
        double min_entropy = 8.0;
        for (int ch = 0; ch < 3; ++ch) {
            min_entropy = std::min(min_entropy, shannon_entropy(channel_plane(guess, ch)));
        }
        entry.entropy = min_entropy;
        report.push_back(entry);
    }
    return report;
}

}  // namespace memchaos::metrics

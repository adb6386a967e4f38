#include "memchaos/nist.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>
#include <complex>

#include "fft.hpp"
#include "memchaos/error.hpp"

namespace memchaos::nist {

namespace {

void require_length(const BitSequence& s, std::size_t minimum, const char* test) {
    if (s.size() < minimum) {
        throw DomainError(std::string(test) + " needs at least " +
                          std::to_string(minimum) + " bits, got " +
                          std::to_string(s.size()));
    }
}

double igamc(double a, double x) {
    // Chi-square statistics are non-negative by construction, but cancellation
    // can land an exactly-zero statistic a few ulps below zero; the reference
    // implementations return 1 there rather than fault.
    if (x <= 0.0) return 1.0;
    [[maybe_unused]] static gsl_error_handler_t* handler = gsl_set_error_handler_off();
    const double q = gsl_sf_gamma_inc_Q(a, x);
    if (std::isnan(q)) {
        throw NumericError("incomplete gamma evaluation failed");
    }
    return q;
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TestResult verdict(const char* name, double p) {
    // Clamp rounding spill; p is a probability by construction.
    p = std::min(1.0, std::max(0.0, p));
    return TestResult{name, p, p >= 0.01};
}

// Overlapping m-bit pattern counts with wraparound; m <= 20.
std::vector<std::uint64_t> pattern_counts(const BitSequence& s, int m) {
    const std::size_t n = s.size();
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    std::uint64_t idx = 0;
    for (int j = 0; j < m; ++j) {
        idx = (idx << 1) | static_cast<std::uint64_t>(s.bit(static_cast<std::size_t>(j) % n));
    }
    ++counts[idx];
    for (std::size_t i = 1; i < n; ++i) {
        idx = ((idx << 1) & mask) |
              static_cast<std::uint64_t>(s.bit((i + static_cast<std::size_t>(m) - 1) % n));
        ++counts[idx];
    }
    return counts;
}

// psi-square statistic of overlapping m-bit patterns; psi2(0) == 0.
double psi_square(const BitSequence& s, int m) {
    if (m <= 0) {
        return 0.0;
    }
    const auto counts = pattern_counts(s, m);
    const double n = static_cast<double>(s.size());
    double sum = 0.0;
    for (std::uint64_t c : counts) {
        sum += static_cast<double>(c) * static_cast<double>(c);
    }
    return sum * static_cast<double>(std::size_t{1} << m) / n - n;
}

}  // namespace

BitSequence BitSequence::from_bytes(const std::vector<std::uint8_t>& bytes,
                                    std::size_t n_bits) {
    if (n_bits == 0) {
        throw DomainError("bit sequence must be non-empty");
    }
    if (bytes.size() != (n_bits + 7) / 8) {
        throw DomainError("byte buffer size must be ceil(n_bits / 8)");
    }
    BitSequence s;
    s.n_ = n_bits;
    s.words_.assign((n_bits + 63) / 64, 0);
    for (std::size_t k = 0; k < bytes.size(); ++k) {
        const std::size_t offset = 8 * k;  // byte-aligned, never crosses a word
        s.words_[offset >> 6] |= std::uint64_t{bytes[k]} << (56 - (offset & 63));
    }
    return s;
}

BitSequence bits_from_keystream(KeystreamGenerator& g, std::size_t n_bits) {
    if (n_bits == 0) {
        throw DomainError("bit sequence must be non-empty");
    }
    std::vector<std::uint8_t> bytes((n_bits + 7) / 8);
    g.fill(bytes.data(), bytes.size());
    return BitSequence::from_bytes(bytes, n_bits);
}

TestResult monobit(const BitSequence& s) {
    require_length(s, 100, "monobit test");
    const std::size_t n = s.size();
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += 2 * s.bit(i) - 1;
    }
    const double s_obs =
        std::fabs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(n));
    return verdict("Frequency", std::erfc(s_obs / std::sqrt(2.0)));
}

TestResult block_frequency(const BitSequence& s, std::size_t block_len) {
    require_length(s, 100, "block frequency test");
    if (block_len < 1 || block_len > s.size()) {
        throw DomainError("block length must be in [1, n]");
    }
    const std::size_t blocks = s.size() / block_len;
    double chi = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < block_len; ++i) {
            ones += static_cast<std::size_t>(s.bit(b * block_len + i));
        }
        const double pi = static_cast<double>(ones) / static_cast<double>(block_len);
        chi += (pi - 0.5) * (pi - 0.5);
    }
    chi *= 4.0 * static_cast<double>(block_len);
    return verdict("Block Frequency",
                   igamc(static_cast<double>(blocks) / 2.0, chi / 2.0));
}

TestResult runs(const BitSequence& s) {
    require_length(s, 100, "runs test");
    const std::size_t n = s.size();
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += static_cast<std::size_t>(s.bit(i));
    const double pi = static_cast<double>(ones) / static_cast<double>(n);
    // Frequency precheck: the runs statistic is meaningless on a biased
    // sequence, so the reference procedure reports p = 0 outright.
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n))) {
        return verdict("Runs", 0.0);
    }
    std::size_t v = 1;
    for (std::size_t i = 1; i < n; ++i) {
        v += static_cast<std::size_t>(s.bit(i) != s.bit(i - 1));
    }
    const double nn = static_cast<double>(n);
    const double num = std::fabs(static_cast<double>(v) - 2.0 * nn * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * nn) * pi * (1.0 - pi);
    return verdict("Runs", std::erfc(num / den));
}

TestResult longest_run(const BitSequence& s) {
    require_length(s, 128, "longest run test");
    const std::size_t n = s.size();
    std::size_t block_len;
    std::vector<double> pi;
    std::size_t lo;  // runs <= lo land in the first category
    if (n < 6272) {
        block_len = 8;
        pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
        lo = 1;
    } else if (n < 750000) {
        block_len = 128;
        pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071,
              0.112398847};
        lo = 4;
    } else {
        block_len = 10000;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
        lo = 10;
    }
    const std::size_t categories = pi.size();
    const std::size_t hi = lo + categories - 1;
    const std::size_t blocks = n / block_len;
    std::vector<std::uint64_t> v(categories, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t longest = 0, run = 0;
        for (std::size_t i = 0; i < block_len; ++i) {
            run = s.bit(b * block_len + i) ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        const std::size_t cat = longest <= lo ? 0
                                : longest >= hi ? categories - 1
                                                : longest - lo;
        ++v[cat];
    }
    double chi = 0.0;
    for (std::size_t k = 0; k < categories; ++k) {
        const double expect = static_cast<double>(blocks) * pi[k];
        const double diff = static_cast<double>(v[k]) - expect;
        chi += diff * diff / expect;
    }
    return verdict("Longest Run",
                   igamc(static_cast<double>(categories - 1) / 2.0, chi / 2.0));
}

TestResult cumulative_sums(const BitSequence& s, CusumMode mode) {
    require_length(s, 100, "cumulative sums test");
    const std::size_t n = s.size();
    std::int64_t sum = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = mode == CusumMode::forward ? i : n - 1 - i;
        sum += 2 * s.bit(idx) - 1;
        z = std::max<std::int64_t>(z, sum < 0 ? -sum : sum);
    }
    const double nn = static_cast<double>(n);
    const double zz = static_cast<double>(z);
    const double sqn = std::sqrt(nn);
    double p = 1.0;
    {
        const auto k_lo = static_cast<std::int64_t>(std::floor((-nn / zz + 1.0) / 4.0));
        const auto k_hi = static_cast<std::int64_t>(std::floor((nn / zz - 1.0) / 4.0));
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            const double kk = static_cast<double>(k);
            p -= std_normal_cdf((4.0 * kk + 1.0) * zz / sqn) -
                 std_normal_cdf((4.0 * kk - 1.0) * zz / sqn);
        }
    }
    {
        const auto k_lo = static_cast<std::int64_t>(std::floor((-nn / zz - 3.0) / 4.0));
        const auto k_hi = static_cast<std::int64_t>(std::floor((nn / zz - 1.0) / 4.0));
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
            const double kk = static_cast<double>(k);
            p += std_normal_cdf((4.0 * kk + 3.0) * zz / sqn) -
                 std_normal_cdf((4.0 * kk + 1.0) * zz / sqn);
        }
    }
    return verdict("Cumulative Sums", p);
}

TestResult spectral_fft(const BitSequence& s) {
    require_length(s, 1000, "spectral test");
    const std::size_t n = s.size();
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 2.0 * s.bit(i) - 1.0;
    }
    memchaos::detail::fft_forward(x);
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * static_cast<double>(n));
    const std::size_t half = n / 2;
    std::size_t below = 0;
    for (std::size_t j = 0; j < half; ++j) {
        below += static_cast<std::size_t>(std::abs(x[j]) < threshold);
    }
    const double n0 = 0.95 * static_cast<double>(half);
    const double d = (static_cast<double>(below) - n0) /
                     std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
    return verdict("FFT", std::erfc(std::fabs(d) / std::sqrt(2.0)));
}

TestResult approximate_entropy(const BitSequence& s, int m) {
    if (m < 1 || m > 16) {
        throw DomainError("approximate entropy block size must be in [1, 16]");
    }
    require_length(s, std::size_t{1} << (m + 5), "approximate entropy test");
    const double n = static_cast<double>(s.size());
    auto phi = [&](int mm) {
        const auto counts = pattern_counts(s, mm);
        double acc = 0.0;
        for (std::uint64_t c : counts) {
            if (c > 0) {
                const double f = static_cast<double>(c) / n;
                acc += f * std::log(f);
            }
        }
        return acc;
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi = 2.0 * n * (std::log(2.0) - apen);
    return verdict("Approximate Entropy",
                   igamc(static_cast<double>(std::size_t{1} << (m - 1)), chi / 2.0));
}

TestResult serial(const BitSequence& s, int m) {
    if (m < 2 || m > 16) {
        throw DomainError("serial block size must be in [2, 16]");
    }
    require_length(s, std::size_t{1} << (m + 5), "serial test");
    const double psi_m = psi_square(s, m);
    const double psi_m1 = psi_square(s, m - 1);
    const double psi_m2 = psi_square(s, m - 2);
    const double d1 = psi_m - psi_m1;
    const double d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    const double p1 = igamc(std::pow(2.0, m - 2), d1 / 2.0);
    const double p2 = igamc(std::pow(2.0, m - 3), d2 / 2.0);
    // One row, two sub-statistics: report the stricter of the pair.
    return verdict("Serial", std::min(p1, p2));
}

std::vector<TestResult> battery(const BitSequence& s) {
    return {monobit(s),
            block_frequency(s),
            runs(s),
            longest_run(s),
            cumulative_sums(s, CusumMode::forward),
            spectral_fft(s),
            approximate_entropy(s),
            serial(s)};
}

}  // namespace memchaos::nist

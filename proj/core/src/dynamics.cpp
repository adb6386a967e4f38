#include "memchaos/dynamics.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "memchaos/prng.hpp"

namespace memchaos::dynamics {

namespace {

// Adapter exposing the memristive flow to the generic tangent driver.
struct Flow7 {
    static constexpr std::size_t dim = kDim;
    using Vec = State7;
    using Mat = Matrix7;
    SystemParams params;

    Vec rhs(const Vec& s) const noexcept { return memchaos::detail::rhs(s, params); }
    Mat jacobian(const Vec& s) const noexcept {
        return memchaos::detail::jac(s, params);
    }
};

// Largest power of two <= n.
std::size_t floor_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

// Shared SE/C0 preprocessing: truncate to a power of two and remove the
// mean. Throws DomainError below 64 usable samples, NumericError when
// the remainder carries no signal.
std::vector<std::complex<double>> centered_spectrum_input(
    const std::vector<double>& series) {
    if (series.size() < 64) {
        throw DomainError("complexity input needs at least 64 samples");
    }
    const std::size_t n = floor_pow2(series.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += series[i];
    mean /= static_cast<double>(n);
    std::vector<std::complex<double>> data(n);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = series[i] - mean;
        data[i] = v;
        energy += v * v;
    }
    if (!(energy > 0.0)) {
        throw NumericError("complexity input is constant");
    }
    return data;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw NumericError("correlation undefined: zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

LyapunovSpectrum lyapunov_spectrum(const SystemParams& params, const State7& s0,
                                   const IntegratorConfig& cfg,
                                   std::uint64_t renorm_interval,
                                   std::uint64_t total_steps) {
    memchaos::validate(params);
    memchaos::validate(cfg);
    Flow7 sys{params};
    LyapunovSpectrum out;
    out.exponents = benettin_spectrum(sys, s0, cfg.dt, cfg.transient_steps, total_steps,
                                      renorm_interval);
    out.total_time = static_cast<double>(total_steps) * cfg.dt;
    out.renorm_interval = renorm_interval;
    return out;
}

BifurcationData bifurcation_sweep(const ParamRange& alpha_range,
                                  const SystemParams& other_params, const State7& s0,
                                  const IntegratorConfig& cfg) {
    if (!(alpha_range.lo < alpha_range.hi)) {
        throw DomainError("sweep range must satisfy lo < hi");
    }
    if (alpha_range.count < 2) {
        throw DomainError("sweep needs at least 2 points");
    }
    memchaos::validate(cfg);
    BifurcationData data;
    const double span = alpha_range.hi - alpha_range.lo;
    for (std::size_t idx = 0; idx < alpha_range.count; ++idx) {
        const double alpha =
            alpha_range.lo +
            span * static_cast<double>(idx) / static_cast<double>(alpha_range.count - 1);
        SystemParams p = other_params;
        p.alpha = alpha;
        try {
            const Trajectory traj = integrate(s0, p, cfg);
            for (std::size_t i = 2; i < traj.samples.size(); ++i) {
                const double prev2 = traj.samples[i - 2][2];
                const double prev1 = traj.samples[i - 1][2];
                const double cur = traj.samples[i][2];
                if (prev1 > prev2 && prev1 > cur) {
                    data.rows.push_back({alpha, prev1});
                }
            }
        } catch (const DivergenceError&) {
            data.diverged_alphas.push_back(alpha);
        }
    }
    return data;
}

ZeroOneScan zero_one_scan(const std::vector<double>& series, int n_c,
                          std::uint64_t seed) {
    if (series.size() < 1000) {
        throw DomainError("0-1 test needs at least 1000 samples");
    }
    if (n_c < 10) {
        throw DomainError("0-1 test needs at least 10 frequency draws");
    }
    const std::size_t N = series.size();
    // Exact constancy test: a variance threshold would miss constants whose
    // accumulated mean rounds a few ulps away from the common value.
    bool all_same = true;
    for (double v : series) all_same = all_same && v == series.front();
    if (all_same) {
        throw NumericError("0-1 test input is constant");
    }
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(N);

    const std::size_t ncut = N / 10;
    ZeroOneScan scan;
    scan.c.reserve(static_cast<std::size_t>(n_c));
    scan.Kc.reserve(static_cast<std::size_t>(n_c));

    SplitMix64 rng(seed);
    std::vector<double> p(N + 1), q(N + 1);
    std::vector<double> ns(ncut), D(ncut);
    for (int draw = 0; draw < n_c; ++draw) {
        const double c =
            std::numbers::pi / 5.0 + (3.0 * std::numbers::pi / 5.0) * rng.next_double();
        // Translation variables p(n) = sum_{j<=n} x_j cos(j c), q likewise
        // with sine; 1-based j, p(0) = q(0) = 0.
        p[0] = 0.0;
        q[0] = 0.0;
        for (std::size_t j = 1; j <= N; ++j) {
            const double x = series[j - 1];
            const double jc = static_cast<double>(j) * c;
            p[j] = p[j - 1] + x * std::cos(jc);
            q[j] = q[j - 1] + x * std::sin(jc);
        }
        // Mean-square displacement minus the bounded oscillatory term
        // E[x]^2 (1 - cos nc) / (1 - cos c); what is left grows linearly
        // in n only under diffusive (chaotic) dynamics.
        for (std::size_t n = 1; n <= ncut; ++n) {
            double m = 0.0;
            const std::size_t terms = N - n + 1;
            for (std::size_t j = 0; j + n <= N; ++j) {
                const double dp = p[j + n] - p[j];
                const double dq = q[j + n] - q[j];
                m += dp * dp + dq * dq;
            }
            m /= static_cast<double>(terms);
            const double vosc = mean * mean *
                                (1.0 - std::cos(static_cast<double>(n) * c)) /
                                (1.0 - std::cos(c));
            ns[n - 1] = static_cast<double>(n);
            D[n - 1] = m - vosc;
        }
        scan.c.push_back(c);
        scan.Kc.push_back(pearson(ns, D));
    }

    // Median over draws; an even count averages the two central values
    // and flags both contributors.
    std::vector<std::size_t> order(scan.Kc.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scan.Kc[a] < scan.Kc[b]; });
    scan.is_median.assign(scan.Kc.size(), false);
    const std::size_t half = order.size() / 2;
    if (order.size() % 2 == 1) {
        scan.is_median[order[half]] = true;
        scan.K = scan.Kc[order[half]];
    } else {
        scan.is_median[order[half - 1]] = true;
        scan.is_median[order[half]] = true;
        scan.K = 0.5 * (scan.Kc[order[half - 1]] + scan.Kc[order[half]]);
    }
    return scan;
}

double zero_one_test(const std::vector<double>& series, int n_c, std::uint64_t seed) {
    return zero_one_scan(series, n_c, seed).K;
}

double spectral_entropy(const std::vector<double>& series) {
    auto data = centered_spectrum_input(series);
    const std::size_t n = data.size();
    memchaos::detail::fft_forward(data);
    const std::size_t bins = n / 2;
    std::vector<double> power(bins);
    double total = 0.0;
    for (std::size_t k = 1; k <= bins; ++k) {
        power[k - 1] = std::norm(data[k]);
        total += power[k - 1];
    }
    if (!(total > 0.0)) {
        throw NumericError("power spectrum is empty");
    }
    double h = 0.0;
    for (double pw : power) {
        if (pw > 0.0) {
            const double prob = pw / total;
            h -= prob * std::log(prob);
        }
    }
    return h / std::log(static_cast<double>(bins));
}

double c0_complexity(const std::vector<double>& series) {
    auto data = centered_spectrum_input(series);
    const std::size_t n = data.size();
    double total_energy = 0.0;
    for (const auto& z : data) total_energy += std::norm(z);

    memchaos::detail::fft_forward(data);
    double mean_power = 0.0;
    for (const auto& z : data) mean_power += std::norm(z);
    mean_power /= static_cast<double>(n);
    // Keep only dominant bins (power above 5x the spectral mean); the
    // inverse transform of the kept part is the regular skeleton.
    for (auto& z : data) {
        if (std::norm(z) <= 5.0 * mean_power) {
            z = 0.0;
        }
    }
    memchaos::detail::fft_inverse(data);

    // Residual energy fraction. The original series is reconstructed from
    // its centered copy, so recompute it the same way.
    auto original = centered_spectrum_input(series);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> diff = original[i] - data[i];
        residual += std::norm(diff);
    }
    // Parseval bounds the ratio by 1; clamp the last-bit rounding noise.
    return std::min(1.0, std::max(0.0, residual / total_energy));
}

ComplexityMap complexity_map(const ParamRange& alpha_range, const ParamRange& d_range,
                             const SystemParams& base, const IntegratorConfig& cfg,
                             std::size_t sample_count, std::size_t sample_stride) {
    if (!(alpha_range.lo < alpha_range.hi) || !(d_range.lo < d_range.hi)) {
        throw DomainError("grid ranges must satisfy lo < hi");
    }
    if (alpha_range.count < 2 || d_range.count < 2) {
        throw DomainError("grid needs at least 2 points per axis");
    }
    if (sample_count < 64 || sample_stride < 1) {
        throw DomainError("grid cells need >= 64 samples and stride >= 1");
    }
    memchaos::validate(cfg);
    ComplexityMap map;
    map.cells.reserve(alpha_range.count * d_range.count);
    const State7 s0 = canonical_initial_state();
    for (std::size_t ia = 0; ia < alpha_range.count; ++ia) {
        const double alpha = alpha_range.lo +
                             (alpha_range.hi - alpha_range.lo) *
                                 static_cast<double>(ia) /
                                 static_cast<double>(alpha_range.count - 1);
        for (std::size_t id = 0; id < d_range.count; ++id) {
            const double dval = d_range.lo +
                                (d_range.hi - d_range.lo) * static_cast<double>(id) /
                                    static_cast<double>(d_range.count - 1);
            SystemParams p = base;
            p.alpha = alpha;
            p.d = dval;
            ComplexityCell cell{alpha, dval, std::nan(""), std::nan(""), false};
            try {
                Rk4Stepper stepper(s0, p, cfg.dt);
                stepper.advance(cfg.transient_steps);
                std::vector<double> x1;
                x1.reserve(sample_count);
                for (std::size_t s = 0; s < sample_count; ++s) {
                    stepper.advance(sample_stride);
                    x1.push_back(stepper.state()[0]);
                }
                cell.se = spectral_entropy(x1);
                cell.c0 = c0_complexity(x1);
            } catch (const DivergenceError&) {
                cell.diverged = true;
            } catch (const NumericError&) {
                // A cell that settles to a fixed point has a constant
                // sample vector; report it as zero complexity, not an
                // error.
                cell.se = 0.0;
                cell.c0 = 0.0;
            }
            map.cells.push_back(cell);
        }
    }
    return map;
}

}  // namespace memchaos::dynamics

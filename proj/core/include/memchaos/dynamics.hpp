#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "memchaos/error.hpp"
#include "memchaos/integrate.hpp"
#include "memchaos/system.hpp"

namespace memchaos::dynamics {

struct LyapunovSpectrum {
    std::array<double, kDim> exponents{};  // sorted descending, units 1/time
    double total_time = 0.0;
    std::uint64_t renorm_interval = 0;
};

struct BifurcationPoint {
    double alpha;
    double extremum;  // local maximum of x3 past the transient
};

struct BifurcationData {
    std::vector<BifurcationPoint> rows;     // emitted in alpha order
    std::vector<double> diverged_alphas;    // swept values whose orbit blew up
};

struct ComplexityCell {
    double p1;  // alpha
    double p2;  // d
    double se;
    double c0;
    bool diverged;
};

struct ComplexityMap {
    std::vector<ComplexityCell> cells;  // row-major over (p1, p2) grid
};

struct ParamRange {
    double lo;
    double hi;
    std::size_t count;
};

// Benettin exponents for any smooth flow exposing:
//   static constexpr std::size_t dim;
//   using Vec  = std::array<double, dim>;
//   using Mat  = std::array<Vec, dim>;
//   Vec rhs(const Vec&) const;   Mat jacobian(const Vec&) const;
// State and tangent frame advance by the same fourth-order scheme, the
// tangent stages using the Jacobian at the matching state stage points;
// the frame is re-orthonormalized by modified Gram-Schmidt every
// renorm_interval steps and the accumulated log norms divided by elapsed
// time. Throws DivergenceError when the orbit leaves the bound and
// NumericError when a tangent vector collapses below 1e-300.
template <class System>
std::array<double, System::dim> benettin_spectrum(const System& sys,
                                                  typename System::Vec state, double dt,
                                                  std::uint64_t transient_steps,
                                                  std::uint64_t total_steps,
                                                  std::uint64_t renorm_interval);

// The memristive flow's spectrum at the given parameters. Defaults: the
// canonical warm-up, 5e5 steps, renormalization every 10 steps.
LyapunovSpectrum lyapunov_spectrum(const SystemParams& params, const State7& s0,
                                   const IntegratorConfig& cfg,
                                   std::uint64_t renorm_interval = 10,
                                   std::uint64_t total_steps = 500000);

// Sweeps alpha across [lo, hi] (count evenly spaced points, endpoints
// included) holding the remaining parameters fixed; per alpha, integrates
// cfg.transient_steps then records every strict local maximum of x3 over
// cfg.sample_steps samples. A diverging alpha contributes no rows and is
// flagged instead of failing the sweep.
BifurcationData bifurcation_sweep(const ParamRange& alpha_range,
                                  const SystemParams& other_params, const State7& s0,
                                  const IntegratorConfig& cfg);

// Full per-c detail behind the 0-1 chaos statistic.
struct ZeroOneScan {
    std::vector<double> c;       // frequencies drawn from (pi/5, 4*pi/5)
    std::vector<double> Kc;      // growth-rate correlation per frequency
    std::vector<bool> is_median; // contributors to the reported median
    double K = 0.0;              // median of Kc
};

// Gottwald-Melbourne 0-1 test: for each drawn frequency c, build the
// translation variables p(n), q(n), their mean-square displacement with
// the oscillatory term subtracted, and correlate that displacement with
// n; the statistic is the median correlation over n_c draws (an even
// count averages the two middle values and flags both). K near 1 means
// diffusive growth (chaos); near 0, bounded (regular). Constant input
// throws NumericError.
ZeroOneScan zero_one_scan(const std::vector<double>& series, int n_c = 100,
                          std::uint64_t seed = 0x07dccu);

double zero_one_test(const std::vector<double>& series, int n_c = 100,
                     std::uint64_t seed = 0x07dccu);

// Normalized Shannon entropy of the power spectrum: truncate to the
// largest power-of-two length (>= 64 or DomainError), remove the mean,
// transform, and normalize bin probabilities over k = 1..n/2. 1 means a
// flat (noise-like) spectrum, 0 a single line. All-zero input (after
// mean removal) throws NumericError.
double spectral_entropy(const std::vector<double>& series);

// C0 complexity: same preprocessing, then zero every spectral bin whose
// power is at most 5x the mean power, inverse-transform the kept part,
// and return the residual energy fraction in [0, 1]. Noise keeps little
// energy in dominant bins (C0 near 1); a pure tone keeps almost all
// (C0 near 0).
double c0_complexity(const std::vector<double>& series);

// SE and C0 of x1 over an (alpha, d) grid; each cell integrates past the
// transient and samples x1 every sample_stride steps, sample_count times.
// Diverging cells keep their row with the diverged flag set and NaN
// complexity values.
ComplexityMap complexity_map(const ParamRange& alpha_range, const ParamRange& d_range,
                             const SystemParams& base, const IntegratorConfig& cfg,
                             std::size_t sample_count = 4096,
                             std::size_t sample_stride = 50);

// --- template implementation -------------------------------------------

template <class System>
std::array<double, System::dim> benettin_spectrum(const System& sys,
                                                  typename System::Vec state, double dt,
                                                  std::uint64_t transient_steps,
                                                  std::uint64_t total_steps,
                                                  std::uint64_t renorm_interval) {
    constexpr std::size_t n = System::dim;
    using Vec = typename System::Vec;
    using Mat = typename System::Mat;
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("tangent integration dt must be positive and finite");
    }
    if (renorm_interval < 1) {
        throw DomainError("renormalization interval must be >= 1");
    }
    if (total_steps < 1) {
        throw DomainError("tangent integration needs at least one step");
    }

    auto axpy = [](Vec& y, double a, const Vec& x) {
        for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
    };
    auto matvec = [](const Mat& m, const Vec& v) {
        Vec out{};
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += m[i][j] * v[j];
            out[i] = acc;
        }
        return out;
    };
    auto in_bounds = [](const Vec& v) {
        for (double x : v) {
            if (!(std::fabs(x) <= kDivergenceBound)) return false;
        }
        return true;
    };
    auto rk4_state = [&](const Vec& s) {
        const Vec k1 = sys.rhs(s);
        Vec t = s;
        axpy(t, 0.5 * dt, k1);
        const Vec k2 = sys.rhs(t);
        t = s;
        axpy(t, 0.5 * dt, k2);
        const Vec k3 = sys.rhs(t);
        t = s;
        axpy(t, dt, k3);
        const Vec k4 = sys.rhs(t);
        Vec out = s;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        return out;
    };

    std::uint64_t steps = 0;
    auto advance_state_only = [&](std::uint64_t count) {
        for (std::uint64_t s = 0; s < count; ++s) {
            state = rk4_state(state);
            ++steps;
            if (!in_bounds(state)) {
                throw DivergenceError(steps, "orbit diverged at step " +
                                                 std::to_string(steps));
            }
        }
    };
    advance_state_only(transient_steps);

    // Tangent frame starts as the identity basis.
    std::array<Vec, n> frame{};
    for (std::size_t i = 0; i < n; ++i) frame[i][i] = 1.0;
    std::array<double, n> log_sums{};

    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            Vec& v = frame[i];
            for (std::size_t j = 0; j < i; ++j) {
                const Vec& u = frame[j];
                double proj = 0.0;
                for (std::size_t k = 0; k < n; ++k) proj += v[k] * u[k];
                axpy(v, -proj, u);
            }
            double norm2 = 0.0;
            for (double x : v) norm2 += x * x;
            const double norm = std::sqrt(norm2);
            if (!(norm > 1e-300)) {
                throw NumericError("tangent frame collapsed during renormalization");
            }
            log_sums[i] += std::log(norm);
            for (double& x : v) x /= norm;
        }
    };

    for (std::uint64_t s = 0; s < total_steps; ++s) {
        // Four shared stage points; each tangent vector sees the Jacobian
        // evaluated exactly where the state stage was evaluated.
        const Vec k1 = sys.rhs(state);
        Vec p = state;
        axpy(p, 0.5 * dt, k1);
        const Vec k2 = sys.rhs(p);
        Vec p2 = state;
        axpy(p2, 0.5 * dt, k2);
        const Vec k3 = sys.rhs(p2);
        Vec p3 = state;
        axpy(p3, dt, k3);
        const Vec k4 = sys.rhs(p3);

        const Mat j1 = sys.jacobian(state);
        const Mat j2 = sys.jacobian(p);
        const Mat j3 = sys.jacobian(p2);
        const Mat j4 = sys.jacobian(p3);

        for (std::size_t i = 0; i < n; ++i) {
            Vec& v = frame[i];
            const Vec g1 = matvec(j1, v);
            Vec w = v;
            axpy(w, 0.5 * dt, g1);
            const Vec g2 = matvec(j2, w);
            w = v;
            axpy(w, 0.5 * dt, g2);
            const Vec g3 = matvec(j3, w);
            w = v;
            axpy(w, dt, g3);
            const Vec g4 = matvec(j4, w);
            for (std::size_t k = 0; k < n; ++k) {
                v[k] += (dt / 6.0) * (g1[k] + 2.0 * g2[k] + 2.0 * g3[k] + g4[k]);
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            state[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        ++steps;
        if (!in_bounds(state)) {
            throw DivergenceError(steps,
                                  "orbit diverged at step " + std::to_string(steps));
        }
        if ((s + 1) % renorm_interval == 0) {
            gram_schmidt();
        }
    }
    if (total_steps % renorm_interval != 0) {
        gram_schmidt();  // flush the tail interval
    }

    const double elapsed = static_cast<double>(total_steps) * dt;
    std::array<double, n> exponents{};
    for (std::size_t i = 0; i < n; ++i) exponents[i] = log_sums[i] / elapsed;
    std::sort(exponents.begin(), exponents.end(), std::greater<>());
    return exponents;
}

}  // namespace memchaos::dynamics

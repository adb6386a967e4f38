#include "fft.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_fft_complex.h>

#include "memchaos/error.hpp"

namespace memchaos::detail {

namespace {

struct GslFftPlan {
    gsl_fft_complex_wavetable* wavetable = nullptr;
    gsl_fft_complex_workspace* workspace = nullptr;

    explicit GslFftPlan(std::size_t n) {
        wavetable = gsl_fft_complex_wavetable_alloc(n);
        workspace = gsl_fft_complex_workspace_alloc(n);
        if (wavetable == nullptr || workspace == nullptr) {
            if (wavetable) gsl_fft_complex_wavetable_free(wavetable);
            if (workspace) gsl_fft_complex_workspace_free(workspace);
            throw NumericError("FFT plan allocation failed");
        }
    }
    ~GslFftPlan() {
        gsl_fft_complex_wavetable_free(wavetable);
        gsl_fft_complex_workspace_free(workspace);
    }
    GslFftPlan(const GslFftPlan&) = delete;
    GslFftPlan& operator=(const GslFftPlan&) = delete;
};

void disable_gsl_abort() {
    // GSL's default handler aborts the process; run once, keep error
    // codes flowing back as return values instead.
    [[maybe_unused]] static gsl_error_handler_t* previous =
        gsl_set_error_handler_off();
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
    if (data.empty()) {
        throw NumericError("FFT input must be non-empty");
    }
    if (data.size() == 1) {
        return;
    }
    disable_gsl_abort();
    GslFftPlan plan(data.size());
    // std::complex<double> is layout-compatible with double[2].
    auto* packed = reinterpret_cast<double*>(data.data());
    const int status = gsl_fft_complex_forward(packed, 1, data.size(), plan.wavetable,
                                               plan.workspace);
    if (status != GSL_SUCCESS) {
        throw NumericError("FFT forward transform failed");
    }
}

void fft_inverse(std::vector<std::complex<double>>& data) {
    if (data.empty()) {
        throw NumericError("FFT input must be non-empty");
    }
    if (data.size() == 1) {
        return;
    }
    disable_gsl_abort();
    GslFftPlan plan(data.size());
    auto* packed = reinterpret_cast<double*>(data.data());
    const int status = gsl_fft_complex_inverse(packed, 1, data.size(), plan.wavetable,
                                               plan.workspace);
    if (status != GSL_SUCCESS) {
        throw NumericError("FFT inverse transform failed");
    }
}

}  // namespace memchaos::detail

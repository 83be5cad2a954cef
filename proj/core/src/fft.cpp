#include "dictmon/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "dictmon/errors.hpp"

namespace dictmon {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct R2CPlan {
    fftw_plan plan;
    double* in;
    fftw_complex* out;
    std::size_t n;

    explicit R2CPlan(std::size_t n_) : n(n_) {
        std::lock_guard lock(plan_mutex());
        in = fftw_alloc_real(n);
        out = fftw_alloc_complex(n / 2 + 1);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    ~R2CPlan() {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    R2CPlan(const R2CPlan&) = delete;
    R2CPlan& operator=(const R2CPlan&) = delete;
};

struct C2RPlan {
    fftw_plan plan;
    fftw_complex* in;
    double* out;
    std::size_t n;

    explicit C2RPlan(std::size_t n_) : n(n_) {
        std::lock_guard lock(plan_mutex());
        in = fftw_alloc_complex(n / 2 + 1);
        out = fftw_alloc_real(n);
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    ~C2RPlan() {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    C2RPlan(const C2RPlan&) = delete;
    C2RPlan& operator=(const C2RPlan&) = delete;
};

} // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& input, std::size_t n) {
    if (n == 0) throw NumericError("rfft size must be positive");
    R2CPlan p(n);
    const std::size_t copy = std::min(n, input.size());
    std::copy_n(input.begin(), copy, p.in);
    std::fill(p.in + copy, p.in + n, 0.0);
    fftw_execute(p.plan);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] = {p.out[i][0], p.out[i][1]};
    return spec;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spectrum, std::size_t n) {
    if (n == 0) throw NumericError("irfft size must be positive");
    if (spectrum.size() != n / 2 + 1)
        throw NumericError("irfft spectrum size does not match n");
    C2RPlan p(n);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        p.in[i][0] = spectrum[i].real();
        p.in[i][1] = spectrum[i].imag();
    }
    fftw_execute(p.plan);
    std::vector<double> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = p.out[i] * scale;
    return out;
}

std::vector<double> power_spectrum(const std::vector<double>& input, std::size_t n) {
    auto spec = rfft(input, n);
    std::vector<double> p(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) p[i] = std::norm(spec[i]);
    return p;
}

} // namespace dictmon

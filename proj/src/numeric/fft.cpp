#include "slowlight/numeric/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numbers>

namespace slowlight::numeric {

namespace {

// The FFTW planner is not re-entrant; execution of a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<Complex> transform(std::span<const Complex> input, int sign) {
    std::vector<Complex> in(input.begin(), input.end());
    std::vector<Complex> out(input.size());
    if (input.empty()) return out;
    auto* in_ptr = reinterpret_cast<fftw_complex*>(in.data());
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(input.size()), in_ptr, out_ptr, sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

std::vector<Complex> fft(std::span<const Complex> input) {
    return transform(input, FFTW_FORWARD);
}

std::vector<Complex> ifft(std::span<const Complex> input) {
    auto out = transform(input, FFTW_BACKWARD);
    const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
    for (auto& z : out) z *= scale;
    return out;
}

std::vector<Complex> to_complex(std::span<const double> values, std::size_t padded_size) {
    std::vector<Complex> out(std::max(padded_size, values.size()));
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

long signed_bin(std::size_t k, std::size_t n) noexcept {
    return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

double bin_frequency(std::size_t k, std::size_t n, double dt) noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_bin(k, n)) /
           (static_cast<double>(n) * dt);
}

}  // namespace slowlight::numeric

#include "slowlight/envelope/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "slowlight/errors.hpp"
#include "slowlight/numeric/fft.hpp"

namespace slowlight {

namespace {

using numeric::Complex;

struct Derivative {
    std::vector<Complex> values;
    double error_bound = 0.0;  ///< estimated sup-norm error of `values`
};

Derivative spectral_derivative(std::span<const Complex> e, double dt) {
    const std::size_t m = e.size();
    auto spectrum = numeric::fft(e);
    double high_band = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const long q = numeric::signed_bin(k, m);
        if (m % 2 == 0 && q == -static_cast<long>(m / 2)) {
            high_band += std::abs(spectrum[k]) * std::numbers::pi / dt;
            spectrum[k] = 0.0;
            continue;
        }
        const double omega = numeric::bin_frequency(k, m, dt);
        spectrum[k] *= Complex(0.0, omega);
        if (4 * static_cast<std::size_t>(std::abs(q)) > m) high_band += std::abs(spectrum[k]);
    }
    return {numeric::ifft(spectrum), high_band / static_cast<double>(m)};
}

Derivative difference_derivative(std::span<const Complex> f, double dt) {
    const std::size_t m = f.size();
    if (m < 5) throw InvalidArgument("finite-difference derivative needs at least 5 samples");
    std::vector<Complex> d(m);
    const double h12 = 12.0 * dt;
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / h12;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / h12;
    for (std::size_t i = 2; i + 2 < m; ++i) {
        d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / h12;
    }
    d[m - 2] = (3.0 * f[m - 1] + 10.0 * f[m - 2] - 18.0 * f[m - 3] + 6.0 * f[m - 4] - f[m - 5]) / h12;
    d[m - 1] = (25.0 * f[m - 1] - 48.0 * f[m - 2] + 36.0 * f[m - 3] - 16.0 * f[m - 4] +
                3.0 * f[m - 5]) / h12;

    // Richardson: the same stencil at twice the step has 16x the error.
    double bound = 0.0;
    for (std::size_t i = 4; i + 4 < m; ++i) {
        const Complex coarse =
            (-f[i + 4] + 8.0 * f[i + 2] - 8.0 * f[i - 2] + f[i - 4]) / (2.0 * h12);
        bound = std::max(bound, std::abs(d[i] - coarse) / 15.0);
    }
    return {std::move(d), bound};
}

Derivative derivative(std::span<const Complex> e, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("sample step must be positive");
    if (e.empty()) return {};
    return numeric::is_power_of_two(e.size()) ? spectral_derivative(e, dt)
                                              : difference_derivative(e, dt);
}

}  // namespace

std::vector<std::complex<double>> envelope_derivative(std::span<const std::complex<double>> envelope,
                                                      double dt) {
    return derivative(envelope, dt).values;
}

std::vector<std::complex<double>> polarization_envelope(
    std::span<const std::complex<double>> envelope, double dt, const MediumParams& medium,
    double tolerance) {
    const auto d = derivative(envelope, dt);
    const Complex minus_i_chi1(0.0, -medium.chi1());
    std::vector<Complex> p(envelope.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        p[i] = medium.chi0() * envelope[i] + minus_i_chi1 * d.values[i];
        peak = std::max(peak, std::abs(p[i]));
    }
    const double absolute = std::abs(medium.chi1()) * d.error_bound;
    const double estimated = peak > 0.0 ? absolute / peak
                             : absolute > 0.0 ? std::numeric_limits<double>::infinity()
                                              : 0.0;
    if (estimated > tolerance) {
        std::ostringstream os;
        os << "sample grid too coarse for the envelope derivative: estimated relative error "
           << estimated << " exceeds " << tolerance;
        throw InvalidArgument(os.str());
    }
    for (auto& z : p) z *= kVacuumPermittivity;
    return p;
}

}  // namespace slowlight

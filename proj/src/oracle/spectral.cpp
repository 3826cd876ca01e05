#include "slowlight/oracle/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slowlight/envelope/medium.hpp"
#include "slowlight/envelope/transfer.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/numeric/fft.hpp"

namespace slowlight {

using numeric::Complex;

namespace {

StageSignal propagate(const StageSignal& input, std::span<const double> delays,
                      StageResponse response) {
    input.validate();
    const std::size_t n = input.size();
    StageSignal out{input.stage + delays.size(), input.t0, input.dt, std::vector<double>(n, 0.0)};
    if (n == 0 || delays.empty()) {
        out.samples = input.samples;
        return out;
    }
    double total = 0.0;
    for (double T : delays) total += T;
    const auto lag = static_cast<std::size_t>(std::ceil(total / input.dt));
    const std::size_t padded = numeric::next_power_of_two(4 * (n + lag));

    auto spectrum = numeric::fft(numeric::to_complex(input.samples, padded));
    for (std::size_t k = 0; k < padded; ++k) {
        const double omega = numeric::bin_frequency(k, padded, input.dt);
        Complex h(1.0, 0.0);
        for (double T : delays) {
            h *= response == StageResponse::bilinear ? bilinear_transfer_function(omega, T, input.dt)
                                                     : transfer_function(omega, T);
        }
        spectrum[k] *= h;
    }
    const auto time = numeric::ifft(spectrum);
    for (std::size_t k = 0; k < n; ++k) out.samples[k] = time[k].real();
    return out;
}

}  // namespace

StageSignal spectral_propagate(const StageSignal& input, double delay, std::size_t stages,
                               StageResponse response) {
    if (!(delay > 0.0)) throw InvalidArgument("stage delay must be positive");
    const std::vector<double> delays(stages, delay);
    return propagate(input, delays, response);
}

StageSignal spectral_propagate(const StageSignal& input, const DelaySchedule& schedule,
                               StageResponse response) {
    if (!schedule.time_invariant()) {
        throw InvalidArgument("spectral oracle applies only to a time-invariant chain");
    }
    return propagate(input, schedule.row(0), response);
}

double envelope_half_bandwidth(std::span<const std::complex<double>> envelope, double dt,
                               double relative_floor) {
    if (!(dt > 0.0)) throw InvalidArgument("sample step must be positive");
    const auto spectrum = numeric::fft(envelope);
    double peak = 0.0;
    for (const auto& z : spectrum) peak = std::max(peak, std::abs(z));
    double width = 0.0;
    if (peak == 0.0) return width;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (std::abs(spectrum[k]) > relative_floor * peak) {
            width = std::max(width, std::abs(numeric::bin_frequency(k, spectrum.size(), dt)));
        }
    }
    return width;
}

double commensurate_carrier(std::span<const std::complex<double>> envelope, double dt,
                            double multiple) {
    const double half = envelope_half_bandwidth(envelope, dt);
    const double fundamental =
        2.0 * std::numbers::pi / (static_cast<double>(envelope.size()) * dt);
    const double bins = std::max(std::round(multiple * half / fundamental),
                                 std::floor(half / fundamental) + 1.0);
    return bins * fundamental;
}

std::vector<std::complex<double>> polarization_spectral_oracle(
    std::span<const std::complex<double>> envelope, double dt, double chi0, double chi1,
    double omega0) {
    const std::size_t m = envelope.size();
    if (m == 0) return {};
    if (!(omega0 > 0.0)) throw InvalidArgument("carrier frequency must be positive");
    const double half = envelope_half_bandwidth(envelope, dt);
    if (!(half < omega0)) {
        std::ostringstream os;
        os << "envelope half-bandwidth " << half << " rad/s is not below the carrier " << omega0;
        throw InvalidArgument(os.str());
    }
    const double window = static_cast<double>(m) * dt;
    const double carrier_bins = omega0 * window / (2.0 * std::numbers::pi);
    if (std::abs(carrier_bins - std::round(carrier_bins)) > 1e-6 * std::max(1.0, carrier_bins)) {
        throw InvalidArgument("carrier frequency does not fall on a DFT bin of the envelope window");
    }
    const auto k0 = static_cast<std::size_t>(std::round(carrier_bins));

    // Fine grid resolving carrier plus sidebands.
    const std::size_t fine = numeric::next_power_of_two(2 * (k0 + m));
    const double fine_dt = window / static_cast<double>(fine);
    const double upsample = static_cast<double>(fine) / static_cast<double>(m);

    const auto env_spectrum = numeric::fft(envelope);
    std::vector<Complex> fine_spectrum(fine);
    for (std::size_t k = 0; k < m; ++k) {
        const long q = numeric::signed_bin(k, m);
        const auto slot = static_cast<std::size_t>((q + static_cast<long>(fine)) % static_cast<long>(fine));
        fine_spectrum[slot] = env_spectrum[k] * upsample;
    }
    const auto env_fine = numeric::ifft(fine_spectrum);

    // Real field E(t) = env(t) e^{i w0 t} + c.c.
    std::vector<Complex> field(fine);
    for (std::size_t j = 0; j < fine; ++j) {
        const double phase = omega0 * static_cast<double>(j) * fine_dt;
        field[j] = 2.0 * (env_fine[j] * std::polar(1.0, phase)).real();
    }

    auto field_spectrum = numeric::fft(field);
    for (std::size_t q = 0; q < fine; ++q) {
        const double omega = numeric::bin_frequency(q, fine, fine_dt);
        field_spectrum[q] *= kVacuumPermittivity * (chi0 + chi1 * (std::abs(omega) - omega0));
    }
    const auto polarization = numeric::ifft(field_spectrum);

    // Demodulate and keep the baseband.
    std::vector<Complex> mixed(fine);
    for (std::size_t j = 0; j < fine; ++j) {
        const double phase = -omega0 * static_cast<double>(j) * fine_dt;
        mixed[j] = polarization[j].real() * std::polar(1.0, phase);
    }
    const auto mixed_spectrum = numeric::fft(mixed);
    std::vector<Complex> base(m);
    for (std::size_t k = 0; k < m; ++k) {
        const long q = numeric::signed_bin(k, m);
        const auto slot = static_cast<std::size_t>((q + static_cast<long>(fine)) % static_cast<long>(fine));
        base[k] = mixed_spectrum[slot] / upsample;
    }
    return numeric::ifft(base);
}

}  // namespace slowlight

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "slowlight/envelope/schedule.hpp"
#include "slowlight/envelope/signal.hpp"

namespace slowlight {

/// Which stage response the frequency-domain oracle applies.
enum class StageResponse {
    continuous,  ///< H(w) of the analogue stage
    bilinear,    ///< H evaluated at the trapezoidal-warped frequency, exact for the sampled chain
};

/// Propagates `input` through `stages` identical stages of delay T by
/// multiplying its zero-padded DFT with H(w)^stages. The pad holds at least
/// four times the signal plus accumulated delay, so wrap-around is negligible.
/// Returns a signal on the input grid.
StageSignal spectral_propagate(const StageSignal& input, double delay, std::size_t stages,
                               StageResponse response = StageResponse::continuous);

/// Same for a time-invariant schedule (stage-dependent delays allowed).
/// Throws InvalidArgument if the schedule changes in time.
StageSignal spectral_propagate(const StageSignal& input, const DelaySchedule& schedule,
                               StageResponse response = StageResponse::continuous);

/// Brute-force polarization envelope: builds the real field
/// E(t) = env(t) exp(i w0 t) + c.c. on a fine grid, applies
/// chi(w) = chi0 + chi1 (|w| - w0) to its spectrum and demodulates.
///
/// w0 must fall on a DFT bin of the envelope window (w0 n dt / 2 pi integral)
/// and exceed the envelope half-bandwidth; InvalidArgument otherwise.
std::vector<std::complex<double>> polarization_spectral_oracle(
    std::span<const std::complex<double>> envelope, double dt, double chi0, double chi1,
    double omega0);

/// Largest |angular frequency| carrying spectral weight above `relative_floor`
/// of the peak.
double envelope_half_bandwidth(std::span<const std::complex<double>> envelope, double dt,
                               double relative_floor = 1e-10);

/// Carrier placed on the DFT bin nearest to `multiple` times the envelope
/// half-bandwidth (never below one bin above it).
double commensurate_carrier(std::span<const std::complex<double>> envelope, double dt,
                            double multiple = 64.0);

}  // namespace slowlight

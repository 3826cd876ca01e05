#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slowlight/envelope/signal.hpp"

namespace slowlight {

// ---------------------------------------------------------------------------
// Peak tracking
// ---------------------------------------------------------------------------

/// Stage outputs below this fraction of the input peak count as empty.
inline constexpr double kNoiseFloor = 1e-3;

struct PeakPoint {
    std::size_t stage = 0;
    double time = 0.0;
    double value = 0.0;
};

struct PeakTrajectory {
    std::vector<PeakPoint> points;
    std::vector<std::size_t> flagged;  ///< stages with no peak above the floor
};

/// Peak time of every stage, refined by a parabola through the three samples
/// around the discrete maximum.
PeakTrajectory peak_trajectory(const ChainRecord& record);

/// nu = 1 / slope of the least-squares line t_peak(n) over stages [first, last].
/// Throws MeasurementError if fewer than two points fall in the range.
double fit_velocity(const PeakTrajectory& trajectory, std::size_t first, std::size_t last);

/// Fractional stage index of the spatial maximum of v_n(t).
double spatial_peak(const ChainRecord& record, double t);

// ---------------------------------------------------------------------------
// Widths (all measured between e^-1 crossings of the magnitude)
// ---------------------------------------------------------------------------

/// Full width in time at e^-1 of the peak. Equals `width` for a Gaussian input.
double temporal_width(const StageSignal& signal);

/// Full width in stages at e^-1 of the spatial profile v_n(t), linear
/// interpolation between stages. Throws MeasurementError when a crossing is not
/// strictly inside the chain.
double spatial_length(const ChainRecord& record, double t);

/// Half-width at e^-1 of |V(w)| around its maximum, in rad/s.
double spectral_width(const StageSignal& signal);

/// Half-width at e^-1 of the spatial spectrum of v_n(t), in rad/stage.
double spatial_spectral_width(const ChainRecord& record, double t);

/// Instantaneous delta_omega / nu_d inferred from the spatial profile through
/// the chain dispersion relation w T = 2 tan(k / 2): rho = 2 tan(dk / 2).
double instantaneous_spectrum_ratio(const ChainRecord& record, double t);

// ---------------------------------------------------------------------------
// Spectrum condition
// ---------------------------------------------------------------------------

enum class Verdict { satisfied, marginal, violated };

inline constexpr double kMarginalRatio = 0.5;
inline constexpr double kViolatedRatio = 1.0;

struct SpectrumCondition {
    double ratio = 0.0;
    Verdict verdict = Verdict::satisfied;
};

/// rho = delta_omega / nu_d; satisfied below 0.5, marginal below 1, violated otherwise.
SpectrumCondition spectrum_condition(double spectral_width, double velocity);

std::string_view to_string(Verdict verdict);

// ---------------------------------------------------------------------------
// Distortion
// ---------------------------------------------------------------------------

/// Samples where |reference| is below this fraction of its peak are left out
/// of the RMS.
inline constexpr double kSignificanceGate = 0.1;

/// RMS of (signal - reference) over the samples where |reference| >= gate *
/// peak, divided by the reference peak. Zero for an all-zero reference.
double nrmse(std::span<const double> signal, std::span<const double> reference,
             double gate = kSignificanceGate);

/// Per-stage nrmse between two records on the same grid.
std::vector<double> distortion(const ChainRecord& record, const ChainRecord& reference);

/// Largest |(v_{n+1} - v_n) / v_n| over samples with |v_n| > gate * max|v_n|,
/// across stages [first, last) .
double max_fractional_change(const ChainRecord& record, std::size_t first, std::size_t last,
                             double gate);

/// Shifts `signal` by `shift` seconds (later for positive) using cubic
/// interpolation on its own grid.
StageSignal shifted(const StageSignal& signal, double shift);

/// Energy integral sum v^2 dt.
double energy(const StageSignal& signal);

// ---------------------------------------------------------------------------
// Aggregate
// ---------------------------------------------------------------------------

struct SpatialSlice {
    double time = 0.0;
    std::optional<double> length;  ///< stages
};

struct PulseMetrics {
    std::optional<double> velocity;              ///< fitted nu, stages/s
    std::vector<std::optional<double>> peak_time;      ///< per stage, s
    std::vector<std::optional<double>> temporal_width; ///< per stage, s
    std::vector<SpatialSlice> spatial_length;
    std::optional<double> spectral_width;        ///< of the input, rad/s
    std::vector<double> distortion;              ///< per stage vs reference
    std::optional<double> spectrum_ratio;        ///< input delta_omega / nu_d of stage 0 at t = 0
};

/// Measures everything that is defined on the record. Quantities that cannot
/// be measured are left empty rather than raising. `reference` may be null.
PulseMetrics measure(const ChainRecord& record, const ChainRecord* reference,
                     std::span<const double> slice_times);

}  // namespace slowlight

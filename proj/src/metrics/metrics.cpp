#include "slowlight/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slowlight/errors.hpp"
#include "slowlight/numeric/fft.hpp"
#include "slowlight/numeric/sampling.hpp"

namespace slowlight {

namespace {

const double kInvE = std::exp(-1.0);

std::vector<double> magnitude(std::span<const double> v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::abs(x); });
    return out;
}

struct Peak {
    std::size_t index = 0;
    double offset = 0.0;  ///< parabolic refinement, in samples
    double value = 0.0;
};

Peak locate_peak(std::span<const double> y) {
    Peak p;
    p.index = numeric::argmax(y);
    p.value = y[p.index];
    if (p.index > 0 && p.index + 1 < y.size()) {
        const double a = y[p.index - 1];
        const double b = y[p.index];
        const double c = y[p.index + 1];
        p.offset = numeric::quadratic_vertex_offset(a, b, c);
        p.value = numeric::quadratic_vertex_value(a, b, c);
    }
    return p;
}

/// e^-1 crossings of y around its maximum, in fractional samples.
std::optional<numeric::Crossings> e_fold(std::span<const double> y) {
    if (y.empty()) return std::nullopt;
    const Peak p = locate_peak(y);
    if (!(p.value > 0.0)) return std::nullopt;
    return numeric::level_crossings(y, p.index, kInvE * p.value);
}

/// |DFT| of zero-padded samples, rearranged so index j is signed bin j - n/2.
std::vector<double> centred_spectrum(std::span<const double> samples, std::size_t padded) {
    const auto spectrum = numeric::fft(numeric::to_complex(samples, padded));
    std::vector<double> out(padded);
    for (std::size_t k = 0; k < padded; ++k) {
        const long q = numeric::signed_bin(k, padded);
        out[static_cast<std::size_t>(q + static_cast<long>(padded / 2))] = std::abs(spectrum[k]);
    }
    return out;
}

double spectral_half_width(std::span<const double> samples, std::size_t padded, double step) {
    const auto spectrum = centred_spectrum(samples, padded);
    const auto c = e_fold(spectrum);
    if (!c) throw MeasurementError("spectrum is empty or has no e^-1 crossings");
    const double bin = 2.0 * std::numbers::pi / (static_cast<double>(padded) * step);
    return 0.5 * (c->upper - c->lower) * bin;
}

}  // namespace

PeakTrajectory peak_trajectory(const ChainRecord& record) {
    PeakTrajectory out;
    const auto input = magnitude(record.signal(0).samples);
    const double reference = input.empty() ? 0.0 : *std::max_element(input.begin(), input.end());
    const double floor = kNoiseFloor * reference;
    for (std::size_t n = 0; n <= record.stage_count(); ++n) {
        const auto& s = record.signal(n);
        if (reference <= 0.0 || s.size() == 0) {
            out.flagged.push_back(n);
            continue;
        }
        const Peak p = locate_peak(s.samples);
        if (!(s.samples[p.index] > floor)) {
            out.flagged.push_back(n);
            continue;
        }
        out.points.push_back({n, s.time(p.index) + p.offset * s.dt, p.value});
    }
    return out;
}

double fit_velocity(const PeakTrajectory& trajectory, std::size_t first, std::size_t last) {
    double sn = 0, st = 0, snn = 0, snt = 0;
    std::size_t count = 0;
    for (const auto& p : trajectory.points) {
        if (p.stage < first || p.stage > last) continue;
        const double n = static_cast<double>(p.stage);
        sn += n;
        st += p.time;
        snn += n * n;
        snt += n * p.time;
        ++count;
    }
    if (count < 2) throw MeasurementError("velocity fit needs at least two peaks");
    const double c = static_cast<double>(count);
    const double slope = (c * snt - sn * st) / (c * snn - sn * sn);
    if (!(slope > 0.0)) throw MeasurementError("peaks do not move forward along the chain");
    return 1.0 / slope;
}

double spatial_peak(const ChainRecord& record, double t) {
    const auto profile = record.profile(record.sample_index(t));
    const Peak p = locate_peak(profile);
    if (!(p.value > 0.0)) throw MeasurementError("no spatial peak");
    return static_cast<double>(p.index) + p.offset;
}

double temporal_width(const StageSignal& signal) {
    const auto c = e_fold(magnitude(signal.samples));
    if (!c) throw MeasurementError("signal has no e^-1 crossings around its peak");
    return (c->upper - c->lower) * signal.dt;
}

double spatial_length(const ChainRecord& record, double t) {
    const auto profile = magnitude(record.profile(record.sample_index(t)));
    const auto c = e_fold(profile);
    if (!c || !(c->lower > 0.0) || !(c->upper < static_cast<double>(record.stage_count()))) {
        throw MeasurementError("pulse is not fully inside the chain at this time");
    }
    return c->upper - c->lower;
}

double spectral_width(const StageSignal& signal) {
    if (signal.size() == 0) throw MeasurementError("empty signal");
    const std::size_t padded =
        std::max(numeric::next_power_of_two(8 * signal.size()), std::size_t{1} << 18);
    return spectral_half_width(signal.samples, padded, signal.dt);
}

double spatial_spectral_width(const ChainRecord& record, double t) {
    const auto profile = record.profile(record.sample_index(t));
    const std::size_t padded =
        std::max(numeric::next_power_of_two(64 * profile.size()), std::size_t{4096});
    return spectral_half_width(profile, padded, 1.0);
}

double instantaneous_spectrum_ratio(const ChainRecord& record, double t) {
    return 2.0 * std::tan(0.5 * spatial_spectral_width(record, t));
}

SpectrumCondition spectrum_condition(double spectral_width, double velocity) {
    if (!(spectral_width > 0.0) || !(velocity > 0.0)) {
        throw InvalidArgument("spectral width and velocity must be positive");
    }
    SpectrumCondition out;
    out.ratio = spectral_width / velocity;
    out.verdict = out.ratio < kMarginalRatio   ? Verdict::satisfied
                  : out.ratio < kViolatedRatio ? Verdict::marginal
                                               : Verdict::violated;
    return out;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::marginal: return "marginal";
        case Verdict::violated: return "violated";
    }
    return "unknown";
}

double nrmse(std::span<const double> signal, std::span<const double> reference, double gate) {
    if (signal.size() != reference.size()) throw InvalidArgument("grid mismatch");
    double peak = 0.0;
    for (double r : reference) peak = std::max(peak, std::abs(r));
    if (peak == 0.0) return 0.0;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < signal.size(); ++k) {
        if (std::abs(reference[k]) < gate * peak) continue;
        const double d = signal[k] - reference[k];
        sum += d * d;
        ++count;
    }
    return std::sqrt(sum / static_cast<double>(count)) / peak;
}

std::vector<double> distortion(const ChainRecord& record, const ChainRecord& reference) {
    if (!record.same_grid(reference)) throw InvalidArgument("grid mismatch");
    std::vector<double> out(record.stage_count() + 1);
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = nrmse(record.signal(n).samples, reference.signal(n).samples);
    }
    return out;
}

double max_fractional_change(const ChainRecord& record, std::size_t first, std::size_t last,
                             double gate) {
    if (last > record.stage_count() || first > last) {
        throw InvalidArgument("stage range outside the record");
    }
    double worst = 0.0;
    for (std::size_t n = first; n < last; ++n) {
        const auto& v = record.signal(n).samples;
        const auto& next = record.signal(n + 1).samples;
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, std::abs(x));
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (std::abs(v[k]) > gate * peak) {
                worst = std::max(worst, std::abs((next[k] - v[k]) / v[k]));
            }
        }
    }
    return worst;
}

StageSignal shifted(const StageSignal& signal, double shift) {
    StageSignal out = signal;
    const double lag = shift / signal.dt;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.samples[k] = numeric::cubic_interpolate(signal.samples, static_cast<double>(k) - lag);
    }
    return out;
}

double energy(const StageSignal& signal) {
    double sum = 0.0;
    for (double v : signal.samples) sum += v * v;
    return sum * signal.dt;
}

PulseMetrics measure(const ChainRecord& record, const ChainRecord* reference,
                     std::span<const double> slice_times) {
    PulseMetrics m;
    const std::size_t stages = record.stage_count() + 1;
    const auto trajectory = peak_trajectory(record);
    try {
        m.velocity = fit_velocity(trajectory, 0, record.stage_count());
    } catch (const MeasurementError&) {
    }
    m.peak_time.assign(stages, std::nullopt);
    for (const auto& p : trajectory.points) m.peak_time[p.stage] = p.time;

    m.temporal_width.assign(stages, std::nullopt);
    for (std::size_t n = 0; n < stages; ++n) {
        try {
            m.temporal_width[n] = temporal_width(record.signal(n));
        } catch (const MeasurementError&) {
        }
    }
    for (double t : slice_times) {
        SpatialSlice slice{t, std::nullopt};
        try {
            slice.length = spatial_length(record, t);
        } catch (const MeasurementError&) {
        }
        m.spatial_length.push_back(slice);
    }
    try {
        m.spectral_width = spectral_width(record.signal(0));
        m.spectrum_ratio = *m.spectral_width * record.schedule().delay(0, 0.0);
    } catch (const MeasurementError&) {
    }
    if (reference) m.distortion = distortion(record, *reference);
    return m;
}

}  // namespace slowlight

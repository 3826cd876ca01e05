#pragma once

#include <span>
#include <vector>

namespace slowlight {

/// Input waveform v_0(t) fed to stage 0.
///
/// Two kinds are supported: the truncated Gaussian
///     v_0(t) = V0 exp(-4 (t - t_s)^2 / width^2)   for t_lo <= t <= t_hi
/// and an arbitrary waveform given as samples on a uniform grid. Either way the
/// waveform is exactly zero outside [t_lo, t_hi]. `width` is the full width
/// between the e^-1 points of the envelope.
class PulseSpec {
public:
    enum class Kind { gaussian, sampled };

    static PulseSpec gaussian(double amplitude, double center, double width, double t_lo,
                              double t_hi);

    /// Samples are taken at t0, t0 + step, ...; values in between use cubic
    /// interpolation. Center and amplitude describe the largest |sample|.
    static PulseSpec sampled(double t0, double step, std::vector<double> samples);

    /// 1 V peak at 2.5 s, 1 s wide, cut to [0 s, 5 s].
    static PulseSpec reference();

    Kind kind() const noexcept { return kind_; }
    double amplitude() const noexcept { return amplitude_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }
    double t_lo() const noexcept { return t_lo_; }
    double t_hi() const noexcept { return t_hi_; }
    std::span<const double> samples() const noexcept { return samples_; }
    double sample_step() const noexcept { return step_; }

    double operator()(double t) const;

    bool operator==(const PulseSpec&) const = default;

private:
    PulseSpec() = default;

    Kind kind_ = Kind::gaussian;
    double amplitude_ = 0.0;
    double center_ = 0.0;
    double width_ = 0.0;
    double t_lo_ = 0.0;
    double t_hi_ = 0.0;
    double step_ = 0.0;
    std::vector<double> samples_;
};

/// Closed-form Gaussian input. Throws InvalidArgument for a sampled spec.
double gaussian_input(const PulseSpec& spec, double t);

}  // namespace slowlight

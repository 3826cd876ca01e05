#include "slowlight/envelope/pulse.hpp"

#include <algorithm>
#include <cmath>

#include "slowlight/errors.hpp"
#include "slowlight/numeric/sampling.hpp"

namespace slowlight {

PulseSpec PulseSpec::gaussian(double amplitude, double center, double width, double t_lo,
                              double t_hi) {
    if (!std::isfinite(amplitude) || !std::isfinite(center) || !std::isfinite(width) ||
        !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
        throw InvalidArgument("gaussian pulse parameters must be finite");
    }
    if (!(width > 0.0)) throw InvalidArgument("pulse width must be positive");
    if (!(t_lo < center && center < t_hi)) {
        throw InvalidArgument("pulse center must lie strictly inside [t_lo, t_hi]");
    }
    PulseSpec p;
    p.kind_ = Kind::gaussian;
    p.amplitude_ = amplitude;
    p.center_ = center;
    p.width_ = width;
    p.t_lo_ = t_lo;
    p.t_hi_ = t_hi;
    return p;
}

PulseSpec PulseSpec::sampled(double t0, double step, std::vector<double> samples) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(t0)) {
        throw InvalidArgument("sampled pulse needs a finite origin and positive step");
    }
    if (samples.size() < 2) throw InvalidArgument("sampled pulse needs at least two samples");
    if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidArgument("sampled pulse values must be finite");
    }
    PulseSpec p;
    p.kind_ = Kind::sampled;
    p.step_ = step;
    p.t_lo_ = t0;
    p.t_hi_ = t0 + static_cast<double>(samples.size() - 1) * step;

    std::vector<double> magnitude(samples.size());
    std::transform(samples.begin(), samples.end(), magnitude.begin(),
                   [](double v) { return std::abs(v); });
    const std::size_t peak = numeric::argmax(magnitude);
    p.amplitude_ = samples[peak];
    p.center_ = t0 + static_cast<double>(peak) * step;
    // e^-1 width of |v|; a waveform without both crossings gets its support length.
    if (magnitude[peak] > 0.0) {
        if (auto c = numeric::level_crossings(magnitude, peak, magnitude[peak] * std::exp(-1.0))) {
            p.width_ = (c->upper - c->lower) * step;
        }
    }
    if (!(p.width_ > 0.0)) p.width_ = p.t_hi_ - p.t_lo_;
    p.samples_ = std::move(samples);
    return p;
}

PulseSpec PulseSpec::reference() { return gaussian(1.0, 2.5, 1.0, 0.0, 5.0); }

double PulseSpec::operator()(double t) const {
    if (t < t_lo_ || t > t_hi_) return 0.0;
    if (kind_ == Kind::gaussian) return gaussian_input(*this, t);
    return numeric::cubic_interpolate(samples_, (t - t_lo_) / step_);
}

double gaussian_input(const PulseSpec& spec, double t) {
    if (spec.kind() != PulseSpec::Kind::gaussian) {
        throw InvalidArgument("gaussian_input needs a gaussian pulse");
    }
    if (t < spec.t_lo() || t > spec.t_hi()) return 0.0;
    const double x = (t - spec.center()) / spec.width();
    return spec.amplitude() * std::exp(-4.0 * x * x);
}

}  // namespace slowlight

#include "slowlight/numeric/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "slowlight/errors.hpp"

namespace slowlight::numeric {

CubicProfile::CubicProfile(double origin, double step, std::vector<double> values)
    : origin_(origin), step_(step), values_(std::move(values)) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidArgument("profile step must be positive and finite");
    }
}

double CubicProfile::last() const noexcept {
    return values_.empty() ? origin_ : origin_ + static_cast<double>(values_.size() - 1) * step_;
}

namespace {

double at(std::span<const double> values, long i) noexcept {
    if (i < 0 || i >= static_cast<long>(values.size())) return 0.0;
    return values[static_cast<std::size_t>(i)];
}

}  // namespace

double cubic_interpolate(std::span<const double> values, double s) noexcept {
    const double n = static_cast<double>(values.size());
    if (values.empty() || !(s >= -1.0 && s <= n)) return 0.0;
    const double base = std::floor(s);
    const long i = static_cast<long>(base);
    const double f = s - base;
    if (f == 0.0) return at(values, i);
    // Lagrange weights on nodes i-1, i, i+1, i+2.
    const double wm = -f * (f - 1.0) * (f - 2.0) / 6.0;
    const double w0 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
    const double w1 = -(f + 1.0) * f * (f - 2.0) / 2.0;
    const double w2 = (f + 1.0) * f * (f - 1.0) / 6.0;
    return wm * at(values, i - 1) + w0 * at(values, i) + w1 * at(values, i + 1) +
           w2 * at(values, i + 2);
}

double CubicProfile::operator()(double x) const {
    return cubic_interpolate(values_, (x - origin_) / step_);
}

double quadratic_vertex_offset(double a, double b, double c) noexcept {
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return 0.0;
    const double offset = 0.5 * (a - c) / denom;
    return std::clamp(offset, -1.0, 1.0);
}

double quadratic_vertex_value(double a, double b, double c) noexcept {
    const double p = quadratic_vertex_offset(a, b, c);
    return b - 0.25 * (a - c) * p;
}

std::optional<Crossings> level_crossings(std::span<const double> y, std::size_t peak,
                                         double level) {
    if (peak >= y.size()) return std::nullopt;
    Crossings out;
    bool found = false;
    for (std::size_t i = peak; i > 0; --i) {
        if (y[i - 1] <= level) {
            const double hi = y[i];
            const double lo = y[i - 1];
            const double frac = hi == lo ? 0.0 : (hi - level) / (hi - lo);
            out.lower = static_cast<double>(i) - frac;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    found = false;
    for (std::size_t i = peak; i + 1 < y.size(); ++i) {
        if (y[i + 1] <= level) {
            const double hi = y[i];
            const double lo = y[i + 1];
            const double frac = hi == lo ? 0.0 : (hi - level) / (hi - lo);
            out.upper = static_cast<double>(i) + frac;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;
    return out;
}

std::size_t argmax(std::span<const double> y) {
    return static_cast<std::size_t>(std::distance(y.begin(), std::max_element(y.begin(), y.end())));
}

}  // namespace slowlight::numeric

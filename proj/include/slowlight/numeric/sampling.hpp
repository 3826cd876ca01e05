#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace slowlight::numeric {

/// 4-point cubic (Lagrange) interpolation at fractional index s; indices
/// outside the span read as zero.
double cubic_interpolate(std::span<const double> values, double s) noexcept;

/// Uniformly sampled function with 4-point cubic (Lagrange) interpolation and
/// compact support: samples beyond either end read as zero.
class CubicProfile {
public:
    CubicProfile() = default;
    CubicProfile(double origin, double step, std::vector<double> values);

    double origin() const noexcept { return origin_; }
    double step() const noexcept { return step_; }
    double last() const noexcept;
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(double x) const;

private:
    double origin_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
};

/// Vertex offset in (-1, 1) of the parabola through (-1, a), (0, b), (1, c).
double quadratic_vertex_offset(double a, double b, double c) noexcept;
/// Value of that parabola at its vertex.
double quadratic_vertex_value(double a, double b, double c) noexcept;

struct Crossings {
    double lower = 0.0;  ///< fractional index of the crossing before the peak
    double upper = 0.0;  ///< fractional index of the crossing after the peak
};

/// Walks outward from index `peak` until y drops to or below `level` on each
/// side; crossing positions are linearly interpolated. std::nullopt when one
/// side never drops to the level.
std::optional<Crossings> level_crossings(std::span<const double> y, std::size_t peak,
                                         double level);

/// Index of the largest element (first one on ties).
std::size_t argmax(std::span<const double> y);

}  // namespace slowlight::numeric

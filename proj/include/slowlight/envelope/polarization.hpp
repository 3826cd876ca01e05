#pragma once

#include <complex>
#include <span>
#include <vector>

#include "slowlight/envelope/medium.hpp"

namespace slowlight {

/// Polarization envelope of a linear dispersive medium,
///     P = eps0 (chi0 E - i chi1 dE/dt).
///
/// The derivative is spectral when the sample count is a power of two and
/// 4th-order central differences (one-sided at the ends) otherwise. The
/// estimated relative error of the result caused by the derivative must stay
/// below `tolerance`, otherwise InvalidArgument is thrown; the spectral
/// estimate is the weight of the upper half of the band, the finite
/// difference estimate is a Richardson comparison against the doubled step.
std::vector<std::complex<double>> polarization_envelope(
    std::span<const std::complex<double>> envelope, double dt, const MediumParams& medium,
    double tolerance = 1e-6);

/// Time derivative used by polarization_envelope (same method selection, no
/// error check).
std::vector<std::complex<double>> envelope_derivative(
    std::span<const std::complex<double>> envelope, double dt);

}  // namespace slowlight

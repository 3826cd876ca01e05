#include "slowlight/envelope/medium.hpp"

#include <cmath>

#include "slowlight/errors.hpp"

namespace slowlight {

MediumParams::MediumParams(double chi0, double chi1, double omega0, double c)
    : chi0_(chi0), chi1_(chi1), omega0_(omega0), c_(c) {
    if (!(1.0 + chi0 > 0.0)) throw InvalidArgument("1 + chi0 must be positive for a real index");
    if (!(omega0 > 0.0)) throw InvalidArgument("carrier frequency must be positive");
    if (!(c > 0.0)) throw InvalidArgument("speed of light must be positive");
    if (!std::isfinite(chi1)) throw InvalidArgument("chi1 must be finite");
}

double MediumParams::refractive_index() const { return std::sqrt(1.0 + chi0_); }

double MediumParams::wavenumber() const { return refractive_index() * omega0_ / c_; }

double group_velocity(const MediumParams& medium) {
    const double n = medium.refractive_index();
    const double denominator = n + medium.omega0() * medium.chi1() / (2.0 * n);
    if (!(denominator > 0.0)) {
        throw InvalidArgument("dispersion parameters give a non-positive group index");
    }
    return medium.c() / denominator;
}

double eit_velocity_estimate(double window, double omega0, double c) {
    if (!(window > 0.0) || !(omega0 > 0.0)) {
        throw InvalidArgument("window width and carrier frequency must be positive");
    }
    return 2.0 * window * c / omega0;
}

}  // namespace slowlight

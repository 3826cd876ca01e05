#include "slowlight/envelope/transfer.hpp"

#include <cmath>
#include <numbers>

#include "slowlight/errors.hpp"

namespace slowlight {

namespace {

void require_delay(double delay) {
    if (!(delay > 0.0) || !std::isfinite(delay)) {
        throw InvalidArgument("stage delay must be positive and finite");
    }
}

}  // namespace

std::complex<double> transfer_function(double omega, double delay) {
    require_delay(delay);
    const std::complex<double> half(0.0, 0.5 * omega * delay);
    return (1.0 - half) / (1.0 + half);
}

std::complex<double> bilinear_transfer_function(double omega, double delay, double dt) {
    require_delay(delay);
    if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
    const double phase = 0.5 * omega * dt;
    if (std::abs(std::abs(phase) - 0.5 * std::numbers::pi) < 1e-12) return {-1.0, 0.0};
    return transfer_function(2.0 / dt * std::tan(phase), delay);
}

double stage_group_delay(double omega, double delay) {
    require_delay(delay);
    const double x = 0.5 * omega * delay;
    return delay / (1.0 + x * x);
}

double delay_from_rc(double resistance, double capacitance) {
    if (!(resistance > 0.0) || !(capacitance > 0.0)) {
        throw InvalidArgument("resistance and capacitance must be positive");
    }
    return 2.0 * resistance * capacitance;
}

}  // namespace slowlight

#pragma once

#include <complex>

namespace slowlight {

/// First-order all-pass stage H(w) = (1 - i w T / 2) / (1 + i w T / 2).
std::complex<double> transfer_function(double omega, double delay);

/// Response of the stage after trapezoidal discretisation with step dt. The
/// bilinear map sends w to (2 / dt) tan(w dt / 2); at the Nyquist frequency the
/// result is exactly -1.
std::complex<double> bilinear_transfer_function(double omega, double delay, double dt);

/// -d(arg H)/dw = T / (1 + (w T / 2)^2).
double stage_group_delay(double omega, double delay);

/// Delay of the op-amp phase shifter: T = 2 R C.
double delay_from_rc(double resistance, double capacitance);

}  // namespace slowlight

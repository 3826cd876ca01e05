#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace slowlight::numeric {

using Complex = std::complex<double>;

/// Unnormalised forward DFT, X_k = sum_j x_j exp(-2 pi i j k / n). Any length.
std::vector<Complex> fft(std::span<const Complex> input);
/// Inverse of fft (includes the 1/n factor).
std::vector<Complex> ifft(std::span<const Complex> input);

std::vector<Complex> to_complex(std::span<const double> values, std::size_t padded_size = 0);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

/// Signed bin index of DFT bin k: k for k < n/2, k - n otherwise.
long signed_bin(std::size_t k, std::size_t n) noexcept;
/// Angular frequency of bin k for sample spacing dt (rad per unit of dt).
double bin_frequency(std::size_t k, std::size_t n, double dt) noexcept;

}  // namespace slowlight::numeric

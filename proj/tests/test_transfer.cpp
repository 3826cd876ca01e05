#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "slowlight/envelope/transfer.hpp"

using namespace slowlight;

TEST_CASE("stage response values") {
    CHECK(transfer_function(0.0, 0.3) == std::complex<double>(1.0, 0.0));
    const auto h = transfer_function(2.0 / 0.5, 0.5);  // wT/2 = 1
    CHECK(h.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(h.imag() == doctest::Approx(-1.0));
    CHECK(std::arg(h) == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("unitarity and conjugate symmetry over random samples") {
    std::mt19937_64 rng(20261017);
    std::uniform_real_distribution<double> log_w(-4.0, 4.0), log_t(-3.0, 1.0);
    double worst_mag = 0.0, worst_sym = 0.0;
    for (int i = 0; i < 1'000'000; ++i) {
        const double w = std::pow(10.0, log_w(rng)) * (i % 2 ? 1.0 : -1.0);
        const double T = std::pow(10.0, log_t(rng));
        const auto h = transfer_function(w, T);
        worst_mag = std::max(worst_mag, std::abs(std::abs(h) - 1.0));
        worst_sym = std::max(worst_sym, std::abs(transfer_function(-w, T) - std::conj(h)));
    }
    CHECK(worst_mag < 1e-12);
    CHECK(worst_sym < 1e-12);
}

TEST_CASE("group delay values") {
    CHECK(stage_group_delay(0.0, 0.078) == 0.078);
    CHECK(stage_group_delay(0.0, 1.6) == 1.6);
    CHECK(stage_group_delay(2.0 / 0.4, 0.4) == doctest::Approx(0.2));
}

TEST_CASE("group delay matches a finite difference of the phase") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_x(-2.0, 1.5), log_t(-2.0, 0.5);
    for (int i = 0; i < 2000; ++i) {
        const double T = std::pow(10.0, log_t(rng));
        const double w = std::pow(10.0, log_x(rng)) / T;
        const double h = 1e-5 * std::max(w, 1.0 / T);
        // phase of H is -2 atan(wT/2); unwrap the difference
        double dphi = std::arg(transfer_function(w + h, T) / transfer_function(w - h, T));
        const double fd = -dphi / (2.0 * h);
        CHECK(fd == doctest::Approx(stage_group_delay(w, T)).epsilon(1e-6));
    }
}

TEST_CASE("delay from RC") {
    CHECK(delay_from_rc(476e3, 82e-9) == doctest::Approx(0.078).epsilon(0.01));
    CHECK(delay_from_rc(909e3, 82e-9) == doctest::Approx(0.15).epsilon(0.01));
    CHECK(delay_from_rc(10e6, 82e-9) == doctest::Approx(1.64));
}

TEST_CASE("bilinear response") {
    const double dt = 1e-3, T = 0.078;
    const double nyquist = std::numbers::pi / dt;
    CHECK(bilinear_transfer_function(nyquist, T, dt) == std::complex<double>(-1.0, 0.0));
    CHECK(bilinear_transfer_function(0.0, T, dt) == std::complex<double>(1.0, 0.0));
    const double w = 10.0;
    const double warped = 2.0 / dt * std::tan(w * dt / 2.0);
    CHECK(std::abs(bilinear_transfer_function(w, T, dt) - transfer_function(warped, T)) < 1e-15);
    CHECK(std::abs(std::abs(bilinear_transfer_function(1234.5, T, dt)) - 1.0) < 1e-12);
}

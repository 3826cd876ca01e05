#include <doctest.h>

#include <cmath>
#include <complex>

#include "slowlight/chain/chain.hpp"
#include "slowlight/envelope/medium.hpp"
#include "slowlight/envelope/transfer.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/metrics/metrics.hpp"
#include "slowlight/oracle/characteristic.hpp"
#include "slowlight/oracle/spectral.hpp"

using namespace slowlight;
using numeric::CubicProfile;

namespace {

constexpr double kDt = 1e-3;

double gauss(double x, double center, double width) {
    const double s = (x - center) / width;
    return std::exp(-4.0 * s * s);
}

CubicProfile sampled(double origin, double step, std::size_t n, double center, double width) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = gauss(origin + k * step, center, width);
    return CubicProfile(origin, step, std::move(v));
}

StageSignal input_signal(double horizon) {
    StageSignal s{0, 0.0, kDt, {}};
    const auto p = PulseSpec::reference();
    for (std::size_t k = 0; k * kDt <= horizon + 1e-9; ++k) s.samples.push_back(gaussian_input(p, k * kDt));
    return s;
}

}  // namespace

TEST_CASE("characteristic_x with constant velocity is a pure shift") {
    const auto phi = sampled(0.0, kDt, 5001, 2.5, 1.0);
    const std::vector<double> nu(40, 13.0);
    for (std::size_t n : {0u, 7u, 25u, 40u}) {
        for (double t : {1.0, 2.9, 3.7, 5.1}) {
            CHECK(characteristic_x(phi, nu, n, t) == doctest::Approx(gauss(t - n / 13.0, 2.5, 1.0)).epsilon(1e-8));
        }
    }
    CHECK(characteristic_x(phi, nu, 0, -2.0) == 0.0);
    CHECK(characteristic_x(phi, nu, 40, 100.0) == 0.0);
}

TEST_CASE("characteristic_x accumulates per-stage delays") {
    const auto phi = sampled(0.0, kDt, 5001, 2.5, 1.0);
    std::vector<double> nu(40, 6.7);
    std::fill(nu.begin(), nu.begin() + 25, 13.0);
    const double delay = 25.0 / 13.0 + 15.0 / 6.7;
    CHECK(characteristic_x(phi, nu, 40, 2.5 + delay) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(characteristic_x(phi, nu, 40, 3.0 + delay) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("characteristic_t: frozen interval and slowdown") {
    const auto psi = sampled(-5.0, 0.01, 5001, 20.0, 13.0);
    const std::vector<VelocityPeriod> frozen{{0.0, 13.0}, {1.0, 0.0}, {3.0, 13.0}};
    CHECK(travelled_stages(frozen, 2.5) == doctest::Approx(13.0));
    CHECK(travelled_stages(frozen, -1.0) == doctest::Approx(-13.0));
    for (double n : {20.0, 30.5, 36.0}) {
        CHECK(characteristic_t(psi, frozen, n, 1.2) == characteristic_t(psi, frozen, n, 2.9));
    }

    // Halving the velocity at t = 0.5 doubles the temporal width at a late stage.
    const std::vector<VelocityPeriod> slowdown{{0.0, 13.0}, {0.5, 6.5}};
    StageSignal at39{39, 0.0, kDt, {}};
    for (std::size_t k = 0; k <= 10000; ++k) at39.samples.push_back(characteristic_t(psi, slowdown, 39.0, k * kDt));
    CHECK(temporal_width(at39) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("boundary and initial forms agree for constant velocity") {
    const double nu = 13.0;
    const auto phi = sampled(0.0, kDt, 5001, 2.5, 1.0);
    // psi(n) = phi(-n / nu): the pulse still outside the chain at t = 0.
    const auto psi = sampled(-5.0 * nu, kDt * nu, 5001, -2.5 * nu, nu);
    const std::vector<double> velocity(40, nu);
    const std::vector<VelocityPeriod> periods{{0.0, nu}};
    for (std::size_t n = 0; n <= 40; n += 5) {
        for (double t = 0.5; t < 9.0; t += 0.37) {
            CHECK(std::abs(characteristic_x(phi, velocity, n, t) -
                           characteristic_t(psi, periods, static_cast<double>(n), t)) < 1e-7);
        }
    }
}

TEST_CASE("width and length conservation of the transport solutions") {
    const auto sim = simulate_chain(PulseSpec::reference(),
                                    DelaySchedule::two_region(40, 25, 1.0 / 13.0, 1.0 / 6.7),
                                    IntegratorConfig{}, 12.0);
    const auto ideal = characteristic_record(sim);
    const double w0 = temporal_width(ideal.signal(0));
    for (std::size_t n = 0; n <= 40; ++n) CHECK(temporal_width(ideal.signal(n)) == doctest::Approx(w0).epsilon(0.01));
    // spatial compression follows the velocity ratio
    const double l1 = spatial_length(ideal, 2.5 + 12.5 / 13.0);
    const double l2 = spatial_length(ideal, 2.5 + 25.0 / 13.0 + 7.5 / 6.7);
    CHECK(l1 == doctest::Approx(13.0).epsilon(0.02));
    CHECK(l2 / l1 == doctest::Approx(6.7 / 13.0).epsilon(0.02));

    const auto psi = sampled(-5.0, 0.01, 6001, 18.0, 13.0);
    const std::vector<VelocityPeriod> periods{{0.0, 13.0}, {0.3, 0.625}, {3.3, 13.0}};
    const auto solution = CharacteristicSolution::from_initial(psi, periods);
    for (double t : {0.0, 0.2, 1.0, 3.0, 3.4}) {
        std::vector<double> profile;
        for (int k = 0; k <= 8000; ++k) profile.push_back(characteristic_t(psi, periods, k * 0.01, t));
        const auto c = numeric::level_crossings(profile, numeric::argmax(profile), std::exp(-1.0));
        REQUIRE(c);
        CHECK((c->upper - c->lower) * 0.01 == doctest::Approx(13.0).epsilon(0.01));
        CHECK(solution(20, t) == characteristic_t(psi, periods, 20.0, t));
    }
}

TEST_CASE("ratio conservation on the ideal freeze record") {
    const double times[] = {0.0, 4.0, 7.0}, delays[] = {0.078, 1.6, 0.078};
    const auto sim = simulate_chain(PulseSpec::reference(), DelaySchedule::periods(40, times, delays),
                                    IntegratorConfig{}, 15.0);
    const auto ideal = characteristic_record(sim);
    for (double t : {3.95, 5.5, 7.05}) {
        CHECK(instantaneous_spectrum_ratio(ideal, t) == doctest::Approx(0.31).epsilon(0.03));
    }
}

TEST_CASE("characteristic record matches the general boundary form") {
    const auto schedule = DelaySchedule::two_region(40, 25, 0.078, 0.15);
    const auto sim = simulate_chain(PulseSpec::reference(), schedule, IntegratorConfig{}, 12.0);
    const auto ideal = characteristic_record(sim);
    const auto general = CharacteristicSolution::from_boundary(boundary_profile(sim.signal(0)), schedule);
    for (std::size_t n : {0u, 10u, 30u, 40u}) {
        for (std::size_t k = 0; k < sim.sample_count(); k += 613) {
            CHECK(ideal.signal(n).samples[k] == doctest::Approx(general(n, sim.time(k))).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(velocity_periods(schedule), InvalidArgument);
}

TEST_CASE("spectral propagation examples") {
    const auto in = input_signal(12.0);
    CHECK(spectral_propagate(in, 0.078, 0).samples == in.samples);
    for (std::size_t k = 0; k < in.size(); k += 500) {
        CHECK(spectral_propagate(in, 0.078, 0).samples[k] == doctest::Approx(in.samples[k]).epsilon(1e-12));
    }
    const auto out = spectral_propagate(in, 0.078, 40);
    const auto& s = out.samples;
    const double peak_time = numeric::argmax(s) * kDt;
    CHECK(peak_time - 2.5 == doctest::Approx(3.12).epsilon(0.02));
    CHECK(out.size() == in.size());
}

TEST_CASE("single stage shifts a narrowband tone by arg H") {
    const double w = 6.0, T = 0.15, center = 40.0, sigma = 12.0;
    StageSignal in{0, 0.0, 0.01, {}};
    for (int k = 0; k <= 8000; ++k) in.samples.push_back(gauss(k * 0.01, center, sigma) * std::cos(w * k * 0.01));
    const auto out = spectral_propagate(in, T, 1);
    const double phase = std::arg(transfer_function(w, T));
    const double tau = stage_group_delay(w, T);
    for (double t = 35.0; t < 45.0; t += 0.7) {
        const auto k = static_cast<std::size_t>(std::lround(t / 0.01));
        const double expected = gauss(k * 0.01 - tau, center, sigma) * std::cos(w * k * 0.01 + phase);
        CHECK(std::abs(out.samples[k] - expected) < 2e-3);
    }
}

TEST_CASE("spectral propagation over schedules") {
    const auto in = input_signal(12.0);
    const auto schedule = DelaySchedule::two_region(40, 25, 0.078, 0.15);
    const auto sim = simulate_chain(in, schedule, IntegratorConfig{});
    const auto o = spectral_propagate(in, schedule, StageResponse::bilinear);
    double err = 0.0;
    for (std::size_t k = 0; k < o.size(); ++k) err = std::max(err, std::abs(o.samples[k] - sim.signal(40).samples[k]));
    CHECK(err < 1e-6);
    const double times[] = {0.0, 4.0}, delays[] = {0.078, 0.15};
    CHECK_THROWS_AS(spectral_propagate(in, DelaySchedule::periods(40, times, delays)), InvalidArgument);
}

TEST_CASE("polarization oracle in the non-dispersive limit") {
    std::vector<std::complex<double>> e(256);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = gauss(k * 0.05, 6.4, 1.5) * std::polar(1.0, 0.3 * k * 0.05);
    const double w0 = commensurate_carrier(e, 0.05);
    CHECK(w0 > envelope_half_bandwidth(e, 0.05));
    const auto p = polarization_spectral_oracle(e, 0.05, 0.8, 0.0, w0);
    for (std::size_t k = 0; k < e.size(); ++k) {
        CHECK(std::abs(p[k] - kVacuumPermittivity * 0.8 * e[k]) < 1e-12 * kVacuumPermittivity);
    }
    CHECK_THROWS_AS(polarization_spectral_oracle(e, 0.05, 0.8, 0.0, w0 * 1.01), InvalidArgument);
}

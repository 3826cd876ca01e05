#include <doctest.h>

#include <cmath>

#include "slowlight/chain/chain.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/metrics/metrics.hpp"
#include "slowlight/oracle/characteristic.hpp"

using namespace slowlight;

namespace {

StageSignal gaussian_signal(double center, double width, double length, double dt = 1e-3) {
    StageSignal s{0, 0.0, dt, {}};
    for (std::size_t k = 0; k * dt <= length + 1e-9; ++k) {
        const double x = (k * dt - center) / width;
        s.samples.push_back(std::exp(-4.0 * x * x));
    }
    return s;
}

ChainRecord run(const DelaySchedule& s, double horizon, double dt = 1e-3) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    return simulate_chain(PulseSpec::reference(), s, cfg, horizon);
}

}  // namespace

TEST_CASE("temporal width") {
    CHECK(temporal_width(gaussian_signal(2.5, 1.0, 5.0)) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(temporal_width(gaussian_signal(5.0, 2.0, 10.0)) == doctest::Approx(2.0).epsilon(1e-5));
    StageSignal cut = gaussian_signal(2.5, 1.0, 5.0);
    cut.samples.resize(2600);  // upper crossing missing
    CHECK_THROWS_AS(temporal_width(cut), MeasurementError);
}

TEST_CASE("spectral width") {
    CHECK(spectral_width(gaussian_signal(2.5, 1.0, 5.0)) == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(spectral_width(gaussian_signal(5.0, 2.0, 10.0)) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("spectrum condition") {
    const auto a = spectrum_condition(4.0, 13.0);
    CHECK(a.ratio == doctest::Approx(0.31).epsilon(0.01));
    CHECK(a.verdict == Verdict::satisfied);
    const auto b = spectrum_condition(4.0, 6.7);
    CHECK(b.ratio == doctest::Approx(0.60).epsilon(0.01));
    CHECK(b.verdict == Verdict::marginal);
    const auto c = spectrum_condition(4.0, 0.62);
    CHECK(c.ratio == doctest::Approx(6.4).epsilon(0.01));
    CHECK(c.verdict == Verdict::violated);
    CHECK(spectrum_condition(0.5, 1.0).verdict == Verdict::marginal);
    CHECK(spectrum_condition(1.0, 1.0).verdict == Verdict::violated);
    CHECK(to_string(Verdict::marginal) == "marginal");
    CHECK_THROWS_AS(spectrum_condition(4.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(spectrum_condition(-1.0, 1.0), InvalidArgument);
}

TEST_CASE("peak trajectory and velocity fit") {
    const auto r = run(DelaySchedule::uniform(40, 1.0 / 13.0), 12.0);
    const auto traj = peak_trajectory(r);
    CHECK(traj.flagged.empty());
    CHECK(fit_velocity(traj, 0, 40) == doctest::Approx(13.0).epsilon(0.05));

    const auto zero = simulate_chain(PulseSpec::gaussian(0.0, 2.5, 1.0, 0.0, 5.0),
                                     DelaySchedule::uniform(40, 0.078), IntegratorConfig{}, 12.0);
    const auto none = peak_trajectory(zero);
    CHECK(none.points.empty());
    CHECK(none.flagged.size() == 41);
    CHECK_THROWS_AS(fit_velocity(none, 0, 40), MeasurementError);
}

TEST_CASE("two-region slopes") {
    const auto r = run(DelaySchedule::two_region(40, 25, 1.0 / 13.0, 1.0 / 6.7), 12.0);
    const auto ideal = characteristic_record(r);
    CHECK(fit_velocity(peak_trajectory(ideal), 0, 25) == doctest::Approx(13.0).epsilon(1e-3));
    CHECK(fit_velocity(peak_trajectory(ideal), 25, 40) == doctest::Approx(6.7).epsilon(1e-3));
    CHECK(fit_velocity(peak_trajectory(r), 0, 25) == doctest::Approx(13.0).epsilon(0.05));
    CHECK(fit_velocity(peak_trajectory(r), 25, 40) == doctest::Approx(6.7).epsilon(0.05));
}

TEST_CASE("spatial length and product rule") {
    const auto r = run(DelaySchedule::two_region(40, 25, 0.078, 0.15), 12.0);
    const double l1 = spatial_length(r, 2.5 + 12.5 * 0.078);
    const double l2 = spatial_length(r, 2.5 + 25 * 0.078 + 7.5 * 0.15);
    CHECK(l1 == doctest::Approx(13.0).epsilon(0.1));
    CHECK(l2 == doctest::Approx(6.7).epsilon(0.1));
    const auto traj = peak_trajectory(r);
    const double w1 = temporal_width(r.signal(12));
    const double w2 = temporal_width(r.signal(33));
    CHECK(l1 == doctest::Approx(fit_velocity(traj, 0, 25) * w1).epsilon(0.1));
    CHECK(l2 == doctest::Approx(fit_velocity(traj, 25, 40) * w2).epsilon(0.1));
    // pulse not yet fully inside the chain
    CHECK_THROWS_AS(spatial_length(r, 2.5), MeasurementError);
}

TEST_CASE("temporal width invariance under a spatial profile") {
    const auto r = run(DelaySchedule::two_region(40, 25, 0.078, 0.15), 12.0);
    for (std::size_t n = 0; n <= 40; ++n) CHECK(temporal_width(r.signal(n)) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("spatial length and ratio across freeze breakpoints") {
    const double times[] = {0.0, 4.0, 7.0}, delays[] = {0.078, 1.6, 0.078};
    const auto r = run(DelaySchedule::periods(40, times, delays), 15.0);
    const double l0 = spatial_length(r, 3.95);
    for (double t : {5.5, 7.05}) CHECK(spatial_length(r, t) == doctest::Approx(l0).epsilon(0.05));
    const double rho = instantaneous_spectrum_ratio(r, 3.95);
    CHECK(rho == doctest::Approx(0.31).epsilon(0.03));
    for (double t : {5.5, 7.05}) CHECK(instantaneous_spectrum_ratio(r, t) == doctest::Approx(rho).epsilon(0.1));
}

TEST_CASE("distortion") {
    const auto r = run(DelaySchedule::uniform(40, 0.078), 12.0);
    for (double d : distortion(r, r)) CHECK(d == 0.0);
    const auto ideal = characteristic_record(r);
    for (double d : distortion(r, ideal)) CHECK(d < 0.05);
    const std::vector<double> zero(10, 0.0), one(10, 1.0);
    CHECK(nrmse(zero, zero) == 0.0);
    CHECK(nrmse(zero, one) == doctest::Approx(1.0));
    const auto coarse = run(DelaySchedule::uniform(40, 0.078), 12.0, 2e-3);
    CHECK_THROWS_AS(distortion(r, coarse), InvalidArgument);
}

TEST_CASE("distortion grows with the spectrum ratio") {
    std::vector<double> worst;
    for (double T : {0.078, 0.15, 1.6}) {
        IntegratorConfig cfg;
        cfg.dt = T > 1.0 ? 2e-3 : 1e-3;
        const auto r = simulate_chain(PulseSpec::reference(), DelaySchedule::uniform(40, T), cfg, T > 1.0 ? 70.0 : 12.0);
        const auto d = distortion(r, characteristic_record(r));
        worst.push_back(d.back());
        for (double x : d) CHECK(x >= 0.0);
    }
    CHECK(worst[0] <= worst[1]);
    CHECK(worst[1] <= worst[2]);
}

TEST_CASE("shift and energy helpers") {
    const auto s = gaussian_signal(2.5, 1.0, 8.0);
    const auto moved = shifted(s, 1.25);
    CHECK(moved.samples[3750] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(energy(s) == doctest::Approx(std::sqrt(std::acos(-1.0) / 8.0)).epsilon(1e-6));
}

TEST_CASE("aggregate measurement") {
    const auto r = run(DelaySchedule::uniform(40, 0.078), 12.0);
    const auto ideal = characteristic_record(r);
    const double slices[] = {1.0, 4.5};
    const auto m = measure(r, &ideal, slices);
    REQUIRE(m.velocity);
    CHECK(*m.velocity > 0.0);
    CHECK(m.peak_time.size() == 41);
    CHECK(m.temporal_width.size() == 41);
    REQUIRE(m.spatial_length.size() == 2);
    CHECK_FALSE(m.spatial_length[0].length);
    REQUIRE(m.spatial_length[1].length);
    CHECK(*m.spatial_length[1].length > 0.0);
    CHECK(m.distortion.size() == 41);
    REQUIRE(m.spectrum_ratio);
    CHECK(*m.spectrum_ratio == doctest::Approx(0.312).epsilon(0.01));
    const auto bare = measure(r, nullptr, {});
    CHECK(bare.distortion.empty());
}

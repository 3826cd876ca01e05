#include "slowlight/scenarios/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slowlight/errors.hpp"
#include "slowlight/oracle/characteristic.hpp"

namespace slowlight {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Times chosen so the pulse sits well inside one region or period.
constexpr double kFig4RegionOneTime = 2.5 + 12.5 * kFastDelay;
constexpr double kFig4RegionTwoTime = 2.5 + 25.0 * kFastDelay + 7.5 * kHalfDelay;

Scenario fig3() {
    Scenario s{"fig3", PulseSpec::reference(), DelaySchedule::uniform(kChainStages, kFastDelay),
               12.0, {}};
    s.expected.velocity = VelocityExpectation{kSwitchTable[0].velocity, 0.05, 0, kChainStages};
    s.expected.temporal_width = WidthExpectation{1.0, 0.05, 0, kChainStages};
    s.expected.distortion.push_back({0, kChainStages, 0.05, DistortionBound::Kind::below});
    s.expected.verdicts.push_back({"chain", 0, 0.0, Verdict::satisfied});
    return s;
}

Scenario fig4() {
    Scenario s{"fig4", PulseSpec::reference(),
               DelaySchedule::two_region(kChainStages, kRegionBoundary, kFastDelay, kHalfDelay),
               12.0, {}};
    s.expected.temporal_width = WidthExpectation{1.0, 0.05, 0, kChainStages};
    s.expected.length_ratio = LengthRatioExpectation{
        kFig4RegionOneTime, kFig4RegionTwoTime,
        kSwitchTable[1].velocity / kSwitchTable[0].velocity, 0.10};
    s.expected.distortion.push_back({0, kRegionBoundary, 0.1, DistortionBound::Kind::below});
    s.expected.distortion.push_back(
        {kRegionBoundary + 1, kChainStages, 0.1, DistortionBound::Kind::below});
    s.expected.verdicts.push_back({"region I", 0, 0.0, Verdict::satisfied});
    s.expected.verdicts.push_back({"region II", kRegionBoundary, 0.0, Verdict::marginal});
    return s;
}

Scenario fig5() {
    Scenario s{"fig5", PulseSpec::reference(),
               DelaySchedule::two_region(kChainStages, kRegionBoundary, kFastDelay, kSlowDelay),
               40.0, {}};
    s.expected.distortion.push_back({0, kRegionBoundary - 1, 0.05, DistortionBound::Kind::below});
    s.expected.distortion.push_back({kChainStages, kChainStages, 0.5, DistortionBound::Kind::above});
    s.expected.verdicts.push_back({"region I", 0, 0.0, Verdict::satisfied});
    s.expected.verdicts.push_back({"region II", kRegionBoundary, 0.0, Verdict::violated});
    return s;
}

Scenario fig6a() {
    const double times[] = {0.0, 4.0, 7.0};
    const double delays[] = {kFastDelay, kHalfDelay, kHalfDelay};
    Scenario s{"fig6a", PulseSpec::reference(), DelaySchedule::periods(kChainStages, times, delays),
               15.0, {}};
    // Stages from 30 on see the whole pulse after the slowdown.
    s.expected.temporal_width = WidthExpectation{kHalfDelay / kFastDelay, 0.05, 30, kChainStages};
    s.expected.ratio = RatioConservation{{3.95, 4.8}, 0.10};
    s.expected.verdicts.push_back({"period I", 0, 0.0, Verdict::satisfied});
    return s;
}

Scenario fig6b() {
    const double times[] = {0.0, 4.0, 7.0};
    const double delays[] = {kFastDelay, kSlowDelay, kFastDelay};
    Scenario s{"fig6b", PulseSpec::reference(), DelaySchedule::periods(kChainStages, times, delays),
               15.0, {}};
    s.expected.freeze = FreezeExpectation{4.0, 7.0, 2.0};
    s.expected.release = ReleaseMatch{"fig3", kChainStages, 0.05};
    s.expected.ratio = RatioConservation{{3.95, 5.5, 7.05}, 0.10};
    s.expected.verdicts.push_back({"period I", 0, 0.0, Verdict::satisfied});
    return s;
}

Check within(std::string name, double measured, double target, double tolerance) {
    const bool ok = std::isfinite(measured) && std::abs(measured - target) <= tolerance * std::abs(target);
    return {std::move(name), measured, "within", target, tolerance, ok};
}

Check below(std::string name, double measured, double bound) {
    return {std::move(name), measured, "<", bound, 0.0, std::isfinite(measured) && measured < bound};
}

Check above(std::string name, double measured, double bound) {
    return {std::move(name), measured, ">", bound, 0.0, std::isfinite(measured) && measured > bound};
}

std::string stage_range(std::string_view what, std::size_t first, std::size_t last) {
    std::ostringstream os;
    os << what << "[n=" << first;
    if (last != first) os << ".." << last;
    os << "]";
    return os.str();
}

template <typename F>
double measured_or_nan(F&& f) {
    try {
        return f();
    } catch (const MeasurementError&) {
        return kNaN;
    }
}

}  // namespace

bool Expectations::empty() const noexcept {
    return !velocity && !temporal_width && !length_ratio && distortion.empty() &&
           verdicts.empty() && !freeze && !ratio && !release;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig3", "fig4", "fig5", "fig6a", "fig6b"};
    return names;
}

Scenario preset(std::string_view name) {
    if (name == "fig3") return fig3();
    if (name == "fig4") return fig4();
    if (name == "fig5") return fig5();
    if (name == "fig6a") return fig6a();
    if (name == "fig6b") return fig6b();
    std::ostringstream os;
    os << "unknown scenario '" << name << "'; presets:";
    for (const auto& n : preset_names()) os << ' ' << n;
    throw InvalidArgument(os.str());
}

bool ScenarioResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<Check> evaluate(const Scenario& scenario, const ChainRecord& record,
                            const ChainRecord& reference, const IntegratorConfig& config) {
    const auto& ex = scenario.expected;
    std::vector<Check> checks;

    if (ex.velocity) {
        const auto& v = *ex.velocity;
        const double nu = measured_or_nan(
            [&] { return fit_velocity(peak_trajectory(record), v.first_stage, v.last_stage); });
        checks.push_back(within(stage_range("velocity", v.first_stage, v.last_stage), nu, v.value,
                                v.relative_tolerance));
    }
    if (ex.temporal_width) {
        const auto& w = *ex.temporal_width;
        double worst = kNaN;
        std::size_t worst_stage = w.first_stage;
        for (std::size_t n = w.first_stage; n <= w.last_stage; ++n) {
            const double width = measured_or_nan([&] { return temporal_width(record.signal(n)); });
            if (!std::isfinite(width)) {
                worst = kNaN;
                worst_stage = n;
                break;
            }
            if (!std::isfinite(worst) || std::abs(width - w.value) > std::abs(worst - w.value)) {
                worst = width;
                worst_stage = n;
            }
        }
        checks.push_back(within(stage_range("temporal_width", worst_stage, worst_stage), worst,
                                w.value, w.relative_tolerance));
    }
    if (ex.length_ratio) {
        const auto& l = *ex.length_ratio;
        const double ratio = measured_or_nan(
            [&] { return spatial_length(record, l.t_second) / spatial_length(record, l.t_first); });
        checks.push_back(within("spatial_length_ratio", ratio, l.value, l.relative_tolerance));
    }
    if (!ex.distortion.empty()) {
        const auto nrmse_per_stage = distortion(record, reference);
        for (const auto& d : ex.distortion) {
            const auto first = nrmse_per_stage.begin() + static_cast<std::ptrdiff_t>(d.first_stage);
            const auto last = nrmse_per_stage.begin() + static_cast<std::ptrdiff_t>(d.last_stage) + 1;
            const auto name = stage_range("nrmse", d.first_stage, d.last_stage);
            if (d.kind == DistortionBound::Kind::below) {
                checks.push_back(below(name, *std::max_element(first, last), d.bound));
            } else {
                checks.push_back(above(name, *std::min_element(first, last), d.bound));
            }
        }
    }
    for (const auto& v : ex.verdicts) {
        const double width = measured_or_nan([&] { return spectral_width(record.signal(v.stage)); });
        Check c{"spectrum_condition[" + v.label + "]", kNaN,
                "is " + std::string(to_string(v.verdict)), 0.0, 0.0, false};
        if (std::isfinite(width)) {
            const auto cond = spectrum_condition(width, scenario.schedule.velocity(v.stage, v.t));
            c.measured = cond.ratio;
            c.passed = cond.verdict == v.verdict;
        }
        checks.push_back(std::move(c));
    }
    if (ex.freeze) {
        const auto& f = *ex.freeze;
        const double advance = measured_or_nan(
            [&] { return spatial_peak(record, f.t_end) - spatial_peak(record, f.t_start); });
        checks.push_back(below("frozen_advance", advance, f.max_advance));
    }
    if (ex.ratio && !ex.ratio->times.empty()) {
        const auto& r = *ex.ratio;
        const double base = measured_or_nan(
            [&] { return instantaneous_spectrum_ratio(record, r.times.front()); });
        for (std::size_t i = 1; i < r.times.size(); ++i) {
            const double rho = measured_or_nan(
                [&] { return instantaneous_spectrum_ratio(record, r.times[i]); });
            std::ostringstream name;
            name << "spectrum_ratio[t=" << r.times[i] << " vs t=" << r.times.front() << "]";
            checks.push_back(within(name.str(), rho, base, r.relative_tolerance));
        }
    }
    if (ex.release) {
        const auto& rel = *ex.release;
        const Scenario other = preset(rel.reference);
        const double horizon = record.time(record.sample_count() - 1);
        const auto ref = simulate_chain(other.pulse, other.schedule, config, horizon);
        const double err = measured_or_nan([&] {
            const auto& mine = record.signal(rel.stage);
            const auto& theirs = ref.signal(rel.stage);
            const auto a = peak_trajectory(record);
            const auto b = peak_trajectory(ref);
            auto find = [&](const PeakTrajectory& t) {
                for (const auto& p : t.points) {
                    if (p.stage == rel.stage) return p.time;
                }
                throw MeasurementError("no peak at the release stage");
            };
            const auto aligned = shifted(theirs, find(a) - find(b));
            return nrmse(mine.samples, aligned.samples);
        });
        checks.push_back(below("release_nrmse[vs " + rel.reference + "]", err, rel.bound));
    }
    return checks;
}

ScenarioResult run_scenario(const Scenario& scenario, const IntegratorConfig& config) {
    auto record = simulate_chain(scenario.pulse, scenario.schedule, config, scenario.horizon);
    auto reference = characteristic_record(record);
    std::vector<double> slices;
    for (double t = 0.0; t <= scenario.horizon + 1e-9; t += 0.5) slices.push_back(t);
    auto metrics = measure(record, &reference, slices);
    auto checks = evaluate(scenario, record, reference, config);
    return {std::move(record), std::move(reference), std::move(metrics), std::move(checks)};
}

}  // namespace slowlight

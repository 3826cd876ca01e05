#include "slowlight/oracle/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include "slowlight/errors.hpp"

namespace slowlight {

double characteristic_x(const numeric::CubicProfile& boundary,
                        std::span<const double> stage_velocity, std::size_t stage, double t) {
    if (stage > stage_velocity.size()) throw InvalidArgument("stage beyond the velocity profile");
    double delay = 0.0;
    for (std::size_t m = 0; m < stage; ++m) {
        if (!(stage_velocity[m] > 0.0)) throw InvalidArgument("stage velocity must be positive");
        delay += 1.0 / stage_velocity[m];
    }
    return boundary(t - delay);
}

double travelled_stages(std::span<const VelocityPeriod> periods, double t) {
    if (periods.empty() || periods.front().start != 0.0) {
        throw InvalidArgument("velocity history must start at t = 0");
    }
    if (t <= 0.0) return periods.front().velocity * t;
    double distance = 0.0;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        const double start = periods[i].start;
        if (start >= t) break;
        const double end = i + 1 < periods.size() ? std::min(periods[i + 1].start, t) : t;
        distance += periods[i].velocity * (end - start);
    }
    return distance;
}

double characteristic_t(const numeric::CubicProfile& initial,
                        std::span<const VelocityPeriod> periods, double stage, double t) {
    return initial(stage - travelled_stages(periods, t));
}

CharacteristicSolution::CharacteristicSolution(Form form, numeric::CubicProfile profile,
                                               DelaySchedule schedule,
                                               std::vector<VelocityPeriod> periods)
    : form_(form),
      profile_(std::move(profile)),
      schedule_(std::move(schedule)),
      periods_(std::move(periods)) {}

CharacteristicSolution CharacteristicSolution::from_boundary(numeric::CubicProfile boundary,
                                                             DelaySchedule schedule) {
    return CharacteristicSolution(Form::boundary, std::move(boundary), std::move(schedule), {});
}

CharacteristicSolution CharacteristicSolution::from_initial(numeric::CubicProfile initial,
                                                            std::vector<VelocityPeriod> periods) {
    if (periods.empty() || periods.front().start != 0.0) {
        throw InvalidArgument("velocity history must start at t = 0");
    }
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (!(periods[i].velocity >= 0.0)) throw InvalidArgument("velocity must be non-negative");
        if (i > 0 && !(periods[i].start > periods[i - 1].start)) {
            throw InvalidArgument("velocity periods must be increasing in time");
        }
    }
    // Stage count is irrelevant for the initial-value form; keep a 1-stage placeholder.
    return CharacteristicSolution(Form::initial, std::move(initial),
                                  DelaySchedule::uniform(1, 1.0), std::move(periods));
}

double CharacteristicSolution::operator()(std::size_t stage, double t) const {
    if (form_ == Form::initial) {
        return characteristic_t(profile_, periods_, static_cast<double>(stage), t);
    }
    return profile_(entry_time(schedule_, t, 0, stage));
}

numeric::CubicProfile boundary_profile(const StageSignal& input) {
    return numeric::CubicProfile(input.t0, input.dt, input.samples);
}

ChainRecord characteristic_record(const ChainRecord& simulated) {
    const auto& schedule = simulated.schedule();
    const auto boundary = boundary_profile(simulated.signal(0));
    const auto solution = CharacteristicSolution::from_boundary(boundary, schedule);
    std::vector<StageSignal> signals;
    signals.reserve(simulated.stage_count() + 1);
    signals.push_back(simulated.signal(0));
    double delay = 0.0;  // accumulated sum of T for a time-invariant schedule
    for (std::size_t n = 1; n <= simulated.stage_count(); ++n) {
        StageSignal s{n, simulated.t0(), simulated.dt(),
                      std::vector<double>(simulated.sample_count())};
        if (schedule.time_invariant()) {
            delay += schedule.row(0)[n - 1];
            for (std::size_t k = 0; k < s.size(); ++k) s.samples[k] = boundary(s.time(k) - delay);
        } else {
            for (std::size_t k = 0; k < s.size(); ++k) s.samples[k] = solution(n, s.time(k));
        }
        signals.push_back(std::move(s));
    }
    return ChainRecord(std::move(signals), schedule);
}

std::vector<VelocityPeriod> velocity_periods(const DelaySchedule& schedule) {
    if (!schedule.stage_uniform()) {
        throw InvalidArgument("velocity history needs a schedule that is uniform across stages");
    }
    std::vector<VelocityPeriod> out;
    for (const auto& bp : schedule.breakpoints()) out.push_back({bp.time, 1.0 / bp.delays.front()});
    return out;
}

}  // namespace slowlight

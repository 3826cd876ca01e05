#include "slowlight/chain/chain.hpp"

#include <cmath>
#include <sstream>

#include "slowlight/errors.hpp"

namespace slowlight {

void IntegratorConfig::validate(const DelaySchedule& schedule) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
    const double limit = schedule.min_delay() * kMaxStepFraction;
    if (dt > limit) {
        std::ostringstream os;
        os << "dt = " << dt << " s exceeds min T / 20 = " << limit << " s";
        throw InvalidArgument(os.str());
    }
}

double required_horizon(const PulseSpec& pulse, const DelaySchedule& schedule) {
    return transit_time(schedule, pulse.t_hi(), 0, schedule.stage_count());
}

ChainRecord simulate_chain(const PulseSpec& pulse, const DelaySchedule& schedule,
                           const IntegratorConfig& config, double horizon) {
    config.validate(schedule);
    const double required = required_horizon(pulse, schedule);
    if (!(horizon >= required - 1e-9)) throw HorizonTooShort(horizon, required);

    const auto steps = static_cast<std::size_t>(std::ceil(horizon / config.dt - 1e-9));
    StageSignal input{0, 0.0, config.dt, std::vector<double>(steps + 1)};
    for (std::size_t k = 0; k <= steps; ++k) input.samples[k] = pulse(input.time(k));
    return simulate_chain(input, schedule, config);
}

ChainRecord simulate_chain(const StageSignal& input, const DelaySchedule& schedule,
                           const IntegratorConfig& config) {
    config.validate(schedule);
    input.validate();
    if (std::abs(input.dt - config.dt) > 1e-12 * config.dt) {
        throw InvalidArgument("input sample step differs from the integrator step");
    }
    const std::size_t stages = schedule.stage_count();
    const std::size_t samples = input.size();

    std::vector<StageSignal> signals;
    signals.reserve(stages + 1);
    signals.push_back(input);
    signals.front().stage = 0;
    for (std::size_t n = 1; n <= stages; ++n) {
        signals.push_back({n, input.t0, input.dt, std::vector<double>(samples, 0.0)});
    }

    // At rest before t0 with zero input: the first sample is reached by one
    // step from (u = 0, v = 0), so the cascade is the causal filter of the
    // sampled input.
    std::vector<StageState> state(stages);
    if (samples > 0) {
        const auto delays = schedule.row(schedule.row_index(input.t0 - 0.5 * input.dt));
        for (std::size_t n = 0; n < stages; ++n) {
            const StageStep step =
                step_stage(state[n], 0.0, signals[n].samples[0], delays[n], input.dt);
            state[n] = step.state;
            signals[n + 1].samples[0] = step.output;
        }
    }

    for (std::size_t k = 0; k + 1 < samples; ++k) {
        const auto delays = schedule.row(schedule.row_index(input.time(k) + 0.5 * input.dt));
        for (std::size_t n = 0; n < stages; ++n) {
            const auto& upstream = signals[n].samples;
            const StageStep step =
                step_stage(state[n], upstream[k], upstream[k + 1], delays[n], input.dt);
            state[n] = step.state;
            signals[n + 1].samples[k + 1] = step.output;
        }
    }
    return ChainRecord(std::move(signals), schedule);
}

}  // namespace slowlight

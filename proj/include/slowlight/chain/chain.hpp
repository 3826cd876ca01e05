#pragma once

#include "slowlight/envelope/pulse.hpp"
#include "slowlight/envelope/schedule.hpp"
#include "slowlight/envelope/signal.hpp"

namespace slowlight {

/// Fixed-step integrator settings for the cascade.
///
/// The only method is the trapezoidal rule. When T changes at a breakpoint the
/// stage state u_n (the capacitor-like quantity) is carried over unchanged and
/// only the coefficient 2 / T switches. The delay used for the step from t_k to
/// t_k + dt is the one in effect at the step midpoint.
struct IntegratorConfig {
    enum class Method { trapezoidal };

    static constexpr double kMaxStepFraction = 1.0 / 20.0;

    double dt = 1e-3;
    Method method = Method::trapezoidal;

    /// Throws InvalidArgument unless 0 < dt <= min T / 20.
    void validate(const DelaySchedule& schedule) const;
};

/// u_n = v_n + v_{n+1}; obeys du/dt = (2 / T)(2 v_n - u).
struct StageState {
    double u = 0.0;
};

struct StageStep {
    StageState state;
    double output = 0.0;  ///< v_{n+1}(t_{k+1})
};

/// One trapezoidal step of a single stage driven by v_n(t_k) and v_n(t_{k+1}).
inline StageStep step_stage(StageState state, double input_now, double input_next,
                            double delay, double dt) noexcept {
    const double a = dt / delay;
    const double u = (state.u * (1.0 - a) + 2.0 * a * (input_now + input_next)) / (1.0 + a);
    return {StageState{u}, u - input_next};
}

/// Earliest horizon at which the trailing edge of the pulse support has left
/// the last stage along its characteristic.
double required_horizon(const PulseSpec& pulse, const DelaySchedule& schedule);

/// Samples the pulse on t_k = k dt, k = 0..round(horizon / dt), and runs the
/// cascade from rest. Throws HorizonTooShort or InvalidArgument.
ChainRecord simulate_chain(const PulseSpec& pulse, const DelaySchedule& schedule,
                           const IntegratorConfig& config, double horizon);

/// Runs the cascade on an already sampled input. input.dt must equal config.dt.
ChainRecord simulate_chain(const StageSignal& input, const DelaySchedule& schedule,
                           const IntegratorConfig& config);

}  // namespace slowlight

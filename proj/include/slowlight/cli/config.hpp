#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "slowlight/envelope/pulse.hpp"
#include "slowlight/envelope/schedule.hpp"
#include "slowlight/scenarios/scenarios.hpp"

namespace slowlight::cli {

struct EmitFlags {
    bool waveforms = true;
    bool metrics = true;
    bool spectra = false;
    bool oracle = false;

    bool operator==(const EmitFlags&) const = default;
};

/// Expectations expressible in an inline definition.
struct InlineExpectations {
    std::optional<double> velocity;
    double velocity_tolerance = 0.05;
    std::optional<double> width;
    double width_tolerance = 0.05;
    std::optional<double> max_distortion;  ///< every stage below
    std::optional<double> min_distortion;  ///< last stage above

    bool operator==(const InlineExpectations&) const = default;
};

struct InlineRun {
    PulseSpec pulse;
    DelaySchedule schedule;
    double horizon = 0.0;
    InlineExpectations expected;

    bool operator==(const InlineRun&) const = default;
};

/// Exactly one of `scenario` and `inline_run` is set.
struct RunConfig {
    std::optional<std::string> scenario;
    std::optional<InlineRun> inline_run;
    double dt = 1e-3;
    std::string output_dir;  ///< empty: use the environment / default
    EmitFlags emit;
    std::size_t decimate = 1;

    bool operator==(const RunConfig&) const = default;
};

/// Parses the sectioned key-value format (see README). Throws ConfigError
/// naming the line and field.
RunConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// `emit` value: comma-separated subset of waveforms, metrics, spectra, oracle.
EmitFlags parse_emit(std::string_view list);

/// Number with an optional time unit (s, ms, us). Throws InvalidArgument.
double parse_seconds(std::string_view text);

/// The scenario to run: the named preset or the inline definition.
Scenario resolve(const RunConfig& config);

}  // namespace slowlight::cli

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slowlight/chain/chain.hpp"
#include "slowlight/envelope/pulse.hpp"
#include "slowlight/envelope/schedule.hpp"
#include "slowlight/metrics/metrics.hpp"

namespace slowlight {

/// One row of the switch table: resistor selected by the two analog switches.
struct SwitchSetting {
    std::string_view sw1;
    std::string_view sw2;
    double resistance;  ///< ohms
    double delay;       ///< tabulated T = 2 R C, s
    double velocity;    ///< tabulated nu_d = 1 / T, 1/s
};

inline constexpr double kStageCapacitance = 82e-9;  // F
inline constexpr std::size_t kChainStages = 40;
inline constexpr std::size_t kRegionBoundary = 25;

inline constexpr std::array<SwitchSetting, 3> kSwitchTable{{
    {"ON", "ON", 476e3, 0.078, 13.0},
    {"ON", "OFF", 909e3, 0.15, 6.7},
    {"OFF", "OFF", 10e6, 1.6, 0.62},
}};

inline constexpr double kFastDelay = kSwitchTable[0].delay;
inline constexpr double kHalfDelay = kSwitchTable[1].delay;
inline constexpr double kSlowDelay = kSwitchTable[2].delay;

// Expectations a preset carries; every value has its own tolerance.

struct VelocityExpectation {
    double value = 0.0;
    double relative_tolerance = 0.0;
    std::size_t first_stage = 0;
    std::size_t last_stage = 0;
};

struct WidthExpectation {
    double value = 0.0;
    double relative_tolerance = 0.0;
    std::size_t first_stage = 0;
    std::size_t last_stage = 0;
};

/// spatial_length(t_second) / spatial_length(t_first).
struct LengthRatioExpectation {
    double t_first = 0.0;
    double t_second = 0.0;
    double value = 0.0;
    double relative_tolerance = 0.0;
};

/// NRMSE against the characteristic solution over stages [first, last].
struct DistortionBound {
    enum class Kind { below, above };
    std::size_t first_stage = 0;
    std::size_t last_stage = 0;
    double bound = 0.0;
    Kind kind = Kind::below;
};

/// Spectrum condition of the pulse on entry to `stage` under the delay in
/// effect there at time `t`.
struct VerdictExpectation {
    std::string label;
    std::size_t stage = 0;
    double t = 0.0;
    Verdict verdict = Verdict::satisfied;
};

struct FreezeExpectation {
    double t_start = 0.0;
    double t_end = 0.0;
    double max_advance = 0.0;  ///< stages
};

/// instantaneous_spectrum_ratio at each time stays within the tolerance of
/// the value at the first time.
struct RatioConservation {
    std::vector<double> times;
    double relative_tolerance = 0.0;
};

/// The output of `stage` matches the same stage of another preset run on the
/// same grid once the peaks are aligned.
struct ReleaseMatch {
    std::string reference;
    std::size_t stage = 0;
    double bound = 0.0;
};

struct Expectations {
    std::optional<VelocityExpectation> velocity;
    std::optional<WidthExpectation> temporal_width;
    std::optional<LengthRatioExpectation> length_ratio;
    std::vector<DistortionBound> distortion;
    std::vector<VerdictExpectation> verdicts;
    std::optional<FreezeExpectation> freeze;
    std::optional<RatioConservation> ratio;
    std::optional<ReleaseMatch> release;

    bool empty() const noexcept;
};

struct Scenario {
    std::string name;
    PulseSpec pulse;
    DelaySchedule schedule;
    double horizon = 0.0;
    Expectations expected;
};

/// Names accepted by preset(), in display order.
const std::vector<std::string>& preset_names();

/// Throws InvalidArgument listing the presets for an unknown name.
Scenario preset(std::string_view name);

struct Check {
    std::string name;
    double measured = 0.0;
    std::string relation;  ///< "<", ">", "within"
    double target = 0.0;
    double tolerance = 0.0;  ///< relative, only for "within"
    bool passed = false;
};

struct ScenarioResult {
    ChainRecord record;
    ChainRecord reference;  ///< characteristic solution on the same grid
    PulseMetrics metrics;
    std::vector<Check> checks;

    bool passed() const;
};

/// Simulates, measures and evaluates every expectation of the scenario.
ScenarioResult run_scenario(const Scenario& scenario, const IntegratorConfig& config);

/// Evaluates expectations against an existing run.
std::vector<Check> evaluate(const Scenario& scenario, const ChainRecord& record,
                            const ChainRecord& reference, const IntegratorConfig& config);

}  // namespace slowlight

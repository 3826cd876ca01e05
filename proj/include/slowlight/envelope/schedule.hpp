#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slowlight {

/// Per-stage delay constants T_n(t), piecewise constant in time.
///
/// Row i holds the delays of all stages for breakpoints()[i].time <= t <
/// breakpoints()[i+1].time. The first row also covers t < 0 and the last row
/// extends to +inf. The stage velocity is nu_d = 1 / T (stages per second).
class DelaySchedule {
public:
    struct Breakpoint {
        double time = 0.0;
        std::vector<double> delays;

        bool operator==(const Breakpoint&) const = default;
    };

    explicit DelaySchedule(std::vector<Breakpoint> breakpoints);

    static DelaySchedule uniform(std::size_t stages, double delay);

    /// Stages [0, boundary) use `first`, stages [boundary, stages) use `second`.
    static DelaySchedule two_region(std::size_t stages, std::size_t boundary, double first,
                                    double second);

    /// Same delay on every stage, switched at the given times.
    /// `times` must start at 0 and match `delays` in length.
    static DelaySchedule periods(std::size_t stages, std::span<const double> times,
                                 std::span<const double> delays);

    std::size_t stage_count() const noexcept { return stages_; }
    const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }

    /// Index of the row in effect at time t.
    std::size_t row_index(double t) const;
    std::span<const double> row(std::size_t index) const { return breakpoints_[index].delays; }

    double delay(std::size_t stage, double t) const;
    double velocity(std::size_t stage, double t) const { return 1.0 / delay(stage, t); }

    double min_delay() const;
    double max_delay() const;

    /// True when every row is identical (no change in time).
    bool time_invariant() const;
    /// True when every stage has the same delay in every row.
    bool stage_uniform() const;

    /// Distinct delay values appearing anywhere, ascending.
    std::vector<double> distinct_delays() const;

    /// Drops breakpoints that repeat the previous row.
    DelaySchedule normalized() const;

    /// Semantic equality: both describe the same T_n(t).
    friend bool operator==(const DelaySchedule& a, const DelaySchedule& b);

private:
    std::size_t stages_ = 0;
    std::vector<Breakpoint> breakpoints_;
};

/// Time-of-flight along the chain: returns the time at which a feature that
/// enters stage `first` at `start` leaves stage `last - 1`, integrating
/// d(position)/dt = nu_d(position, t) exactly through the piecewise schedule.
double transit_time(const DelaySchedule& schedule, double start, std::size_t first,
                    std::size_t last);

/// Reverse of transit_time: time at which a feature reaching the output of
/// stage `last - 1` at `arrival` entered stage `first`.
double entry_time(const DelaySchedule& schedule, double arrival, std::size_t first,
                  std::size_t last);

}  // namespace slowlight

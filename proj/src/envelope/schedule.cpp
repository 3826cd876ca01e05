#include "slowlight/envelope/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slowlight/errors.hpp"

namespace slowlight {

DelaySchedule::DelaySchedule(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.empty()) throw InvalidArgument("schedule needs at least one breakpoint");
    if (breakpoints_.front().time != 0.0) {
        throw InvalidArgument("first schedule breakpoint must be at t = 0");
    }
    stages_ = breakpoints_.front().delays.size();
    if (stages_ == 0) throw InvalidArgument("schedule needs at least one stage");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const auto& bp = breakpoints_[i];
        if (!std::isfinite(bp.time)) throw InvalidArgument("breakpoint time must be finite");
        if (i > 0 && !(bp.time > breakpoints_[i - 1].time)) {
            throw InvalidArgument("breakpoint times must be strictly increasing");
        }
        if (bp.delays.size() != stages_) {
            std::ostringstream os;
            os << "breakpoint at t = " << bp.time << " lists " << bp.delays.size()
               << " delays, expected " << stages_;
            throw InvalidArgument(os.str());
        }
        for (double T : bp.delays) {
            if (!(T > 0.0) || !std::isfinite(T)) {
                std::ostringstream os;
                os << "delay " << T << " at t = " << bp.time << " must be positive and finite";
                throw InvalidArgument(os.str());
            }
        }
    }
}

DelaySchedule DelaySchedule::uniform(std::size_t stages, double delay) {
    return DelaySchedule({Breakpoint{0.0, std::vector<double>(stages, delay)}});
}

DelaySchedule DelaySchedule::two_region(std::size_t stages, std::size_t boundary, double first,
                                        double second) {
    if (boundary > stages) throw InvalidArgument("region boundary beyond the last stage");
    std::vector<double> delays(stages, second);
    std::fill(delays.begin(), delays.begin() + static_cast<std::ptrdiff_t>(boundary), first);
    return DelaySchedule({Breakpoint{0.0, std::move(delays)}});
}

DelaySchedule DelaySchedule::periods(std::size_t stages, std::span<const double> times,
                                     std::span<const double> delays) {
    if (times.size() != delays.size()) {
        throw InvalidArgument("period times and delays differ in length");
    }
    std::vector<Breakpoint> bps;
    bps.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        bps.push_back({times[i], std::vector<double>(stages, delays[i])});
    }
    return DelaySchedule(std::move(bps));
}

std::size_t DelaySchedule::row_index(double t) const {
    // Last breakpoint with time <= t; the first row also covers t < 0.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                               [](double value, const Breakpoint& bp) { return value < bp.time; });
    if (it == breakpoints_.begin()) return 0;
    return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

double DelaySchedule::delay(std::size_t stage, double t) const {
    if (stage >= stages_) throw InvalidArgument("stage index out of range");
    return breakpoints_[row_index(t)].delays[stage];
}

double DelaySchedule::min_delay() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& bp : breakpoints_) m = std::min(m, *std::min_element(bp.delays.begin(), bp.delays.end()));
    return m;
}

double DelaySchedule::max_delay() const {
    double m = 0.0;
    for (const auto& bp : breakpoints_) m = std::max(m, *std::max_element(bp.delays.begin(), bp.delays.end()));
    return m;
}

bool DelaySchedule::time_invariant() const {
    return std::all_of(breakpoints_.begin() + 1, breakpoints_.end(), [&](const Breakpoint& bp) {
        return bp.delays == breakpoints_.front().delays;
    });
}

bool DelaySchedule::stage_uniform() const {
    return std::all_of(breakpoints_.begin(), breakpoints_.end(), [](const Breakpoint& bp) {
        return std::all_of(bp.delays.begin(), bp.delays.end(),
                           [&](double T) { return T == bp.delays.front(); });
    });
}

std::vector<double> DelaySchedule::distinct_delays() const {
    std::vector<double> out;
    for (const auto& bp : breakpoints_) out.insert(out.end(), bp.delays.begin(), bp.delays.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DelaySchedule DelaySchedule::normalized() const {
    std::vector<Breakpoint> kept{breakpoints_.front()};
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (breakpoints_[i].delays != kept.back().delays) kept.push_back(breakpoints_[i]);
    }
    return DelaySchedule(std::move(kept));
}

bool operator==(const DelaySchedule& a, const DelaySchedule& b) {
    return a.stages_ == b.stages_ && a.normalized().breakpoints_ == b.normalized().breakpoints_;
}

double transit_time(const DelaySchedule& schedule, double start, std::size_t first,
                    std::size_t last) {
    if (last > schedule.stage_count() || first > last) {
        throw InvalidArgument("transit range outside the chain");
    }
    const auto& bps = schedule.breakpoints();
    double t = start;
    for (std::size_t n = first; n < last; ++n) {
        double remaining = 1.0;  // one stage to cross
        std::size_t row = schedule.row_index(t);
        while (true) {
            const double nu = 1.0 / bps[row].delays[n];
            const double next = row + 1 < bps.size() ? bps[row + 1].time
                                                      : std::numeric_limits<double>::infinity();
            const double reach = nu * (next - t);
            if (reach >= remaining) {
                t += remaining / nu;
                break;
            }
            remaining -= reach;
            t = next;
            ++row;
        }
    }
    return t;
}

double entry_time(const DelaySchedule& schedule, double arrival, std::size_t first,
                  std::size_t last) {
    if (last > schedule.stage_count() || first > last) {
        throw InvalidArgument("transit range outside the chain");
    }
    const auto& bps = schedule.breakpoints();
    double t = arrival;
    for (std::size_t n = last; n-- > first;) {
        double remaining = 1.0;
        std::size_t row = schedule.row_index(t);
        while (true) {
            const double nu = 1.0 / bps[row].delays[n];
            const double prev = row > 0 ? bps[row].time : -std::numeric_limits<double>::infinity();
            const double reach = nu * (t - prev);
            if (reach >= remaining) {
                t -= remaining / nu;
                break;
            }
            remaining -= reach;
            t = prev;
            --row;
        }
    }
    return t;
}

}  // namespace slowlight

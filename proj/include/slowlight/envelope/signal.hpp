#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slowlight/envelope/schedule.hpp"

namespace slowlight {

/// Output v_n(t_k) of one stage on a uniform grid t_k = t0 + k dt.
struct StageSignal {
    std::size_t stage = 0;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }
    double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
    double end_time() const noexcept { return size() == 0 ? t0 : time(size() - 1); }

    /// Throws InvalidArgument unless dt > 0 and every sample is finite.
    void validate() const;

    bool operator==(const StageSignal&) const = default;
};

/// All stage outputs of one run. signals()[0] is the input; signals()[n] is the
/// output of stage n - 1, which is also the input of stage n.
class ChainRecord {
public:
    ChainRecord(std::vector<StageSignal> signals, DelaySchedule schedule);

    std::size_t stage_count() const noexcept { return signals_.size() - 1; }
    std::size_t sample_count() const noexcept { return signals_.front().size(); }
    double dt() const noexcept { return signals_.front().dt; }
    double t0() const noexcept { return signals_.front().t0; }
    double time(std::size_t k) const noexcept { return signals_.front().time(k); }

    /// Index of the grid point nearest to t, clamped to the record.
    std::size_t sample_index(double t) const;

    const std::vector<StageSignal>& signals() const noexcept { return signals_; }
    const StageSignal& signal(std::size_t n) const { return signals_.at(n); }
    const DelaySchedule& schedule() const noexcept { return schedule_; }

    /// v_n(t_k) for n = 0..N.
    std::vector<double> profile(std::size_t k) const;

    bool same_grid(const ChainRecord& other) const;

    bool operator==(const ChainRecord&) const = default;

private:
    std::vector<StageSignal> signals_;
    DelaySchedule schedule_;
};

}  // namespace slowlight

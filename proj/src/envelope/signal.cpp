#include "slowlight/envelope/signal.hpp"

#include <algorithm>
#include <cmath>

#include "slowlight/errors.hpp"

namespace slowlight {

void StageSignal::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("signal step must be positive");
    if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidArgument("signal contains non-finite samples");
    }
}

ChainRecord::ChainRecord(std::vector<StageSignal> signals, DelaySchedule schedule)
    : signals_(std::move(signals)), schedule_(std::move(schedule)) {
    if (signals_.size() != schedule_.stage_count() + 1) {
        throw InvalidArgument("record needs one signal per stage plus the input");
    }
    const auto& first = signals_.front();
    for (std::size_t n = 0; n < signals_.size(); ++n) {
        const auto& s = signals_[n];
        s.validate();
        if (s.stage != n) throw InvalidArgument("record signals must be ordered by stage");
        if (s.dt != first.dt || s.t0 != first.t0 || s.size() != first.size()) {
            throw InvalidArgument("record signals must share one time grid");
        }
    }
}

std::size_t ChainRecord::sample_index(double t) const {
    const double k = std::round((t - t0()) / dt());
    if (k <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(k), sample_count() - 1);
}

std::vector<double> ChainRecord::profile(std::size_t k) const {
    std::vector<double> out(signals_.size());
    for (std::size_t n = 0; n < signals_.size(); ++n) out[n] = signals_[n].samples.at(k);
    return out;
}

bool ChainRecord::same_grid(const ChainRecord& other) const {
    return stage_count() == other.stage_count() && sample_count() == other.sample_count() &&
           dt() == other.dt() && t0() == other.t0();
}

}  // namespace slowlight
